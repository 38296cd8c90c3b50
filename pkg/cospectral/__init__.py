"""Generalized cospectrality tools: conjugators, isotropy diagnostics, mate search."""
