"""Verification toolkit for the pair-of-pants Landau-Ginzburg A-model."""
