"""Spectral DGS certifier for signed bipartite graphs."""
