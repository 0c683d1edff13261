"""sawkit: exact sampling of nearly-shortest self-avoiding walks on Z^2.

The package counts girth-restricted lattice walks with an exact dynamic
program, samples them proportionally with arbitrary-precision arithmetic,
and rejects down to uniformly random self-avoiding walks.  On top of that
it implements the Aztec-diamond contiguous-2-partition sampler and a
Glauber-dynamics chain with exact conductance diagnostics.
"""

__version__ = "0.1.0"
