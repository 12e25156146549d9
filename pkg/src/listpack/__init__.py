"""List packing and correspondence packing toolkit.

The interesting entry points live in the submodules:

- :mod:`listpack.core` — instances, packings, validation, JSON I/O
- :mod:`listpack.exact` — complete search and packing-number deciders
- :mod:`listpack.constructive` — packers with provable hypotheses
- :mod:`listpack.probabilistic` — randomized packers
- :mod:`listpack.matrixlab` — permanents, transversals, Monte Carlo
- :mod:`listpack.generators` — extremal instances
"""

__version__ = "0.1.0"
