"""Embedded property suites and fixture checks behind the selftest command."""
