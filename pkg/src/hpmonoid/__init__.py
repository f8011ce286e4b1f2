"""Word and conjugacy problems for positive homogeneously presented monoids."""

__version__ = "0.1.0"
