"""Exact integer, rational and polynomial kernels for the DGS certifier."""
