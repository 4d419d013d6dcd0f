"""Finite, exactly checkable versions of constructions on countable quasi-orders.

Submodules:

* ``words``: free-group words, cyclic reduction, overlaps
* ``qo_core``: finite quasi-orders and monoid actions realizing them
* ``monoid_shift``: word encodings on the free monoids ``M_2`` and ``M_omega``
* ``trees``: tree quasi-orders and tree encodings
* ``subset_qo``: translate-intersection quasi-orders on free groups
* ``cancellation``: small-cancellation presentations and Dehn's algorithm
* ``suites``: named property suites; ``cli``: command-line front end
"""

__version__ = "0.1.0"
