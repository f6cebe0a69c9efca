"""OWL ontologies with embedded first-order axioms, translated to TPTP and checked with external provers."""

__version__ = "1.0.0"
