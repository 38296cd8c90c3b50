"""Signed graphs: model, file formats, bipartitions and isomorphism."""
