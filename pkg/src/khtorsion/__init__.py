"""Integral Khovanov homology of link diagrams, with the torsion kept."""

from .diagram import LinkDiagram, parse_pd, load

__version__ = "0.1.0"
