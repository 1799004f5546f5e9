"""Isonemal prefabrics: symmetry, topology, thin striping and catalogues."""

__version__ = "0.1.0"
