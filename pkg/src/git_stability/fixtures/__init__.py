"""Worked examples as polynomial text files, indexed by ``manifest.json``."""
