"""Exact verification toolkit for the Farey/Stern-Brocot Bratteli diagram.

Submodules:

- ``core``: tree labels, continued fractions, the question-mark function,
  the Farey interval map, totient fibers, matrix words.
- ``ideals``: level sets of primitive-ideal and quotient subdiagrams,
  admissibility of quotient sequences, finite-depth topology checks.
- ``dimension_group``: the ordered K0 group of the codimension-one ideal as
  polynomial arithmetic in Z[X + 1/X].
- ``traces``: the trace cone as weight functions on the memoryless tree.
- ``path_algebra``: the finite-floor path model, its generators, and the
  Temperley-Lieb-type projection relations over Q(sqrt(lambda)).
- ``cli``: the ``farey-bratteli`` command-line front end.
"""

from . import core, dimension_group, ideals, path_algebra, traces

__all__ = ["core", "dimension_group", "ideals", "path_algebra", "traces"]
__version__ = "0.1.0"
