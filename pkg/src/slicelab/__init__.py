"""slicelab: a workbench for slice diagrams of flat-at-infinity planar Lagrangians.

The package has three layers:

* combinatorial: immersed planar diagrams with height lifts, a small catalog
  DSL (``8+(A)``, ``C(s,s,s;A1,A2,A3)``, sums, nests), canonical equivalence
  keys, and region-area bookkeeping (:mod:`slicelab.diagram`,
  :mod:`slicelab.catalog`, :mod:`slicelab.equivalence`);
* obstruction theory: per-crossing critical data of the height difference
  function (:mod:`slicelab.morse`), a forcing-rule engine for the four
  capacities (:mod:`slicelab.capacities`), and relation/order checks
  (:mod:`slicelab.cobordism`);
* numerics: compactly supported bump families, level-set extraction by
  marching squares, sweeps, and an independent Hessian oracle
  (:mod:`slicelab.families`, :mod:`slicelab.slicer`, :mod:`slicelab.oracle`).

``slicelab.cli`` and ``slicelab.service`` expose the whole stack as a CLI and
a stateless HTTP API.
"""

from .version import __version__

__all__ = ["__version__"]
