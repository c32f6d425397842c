"""Engines: exact series, brute-force oracle, limit constants and simulation."""
