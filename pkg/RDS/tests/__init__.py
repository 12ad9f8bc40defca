"""Tests for the RD_alpha spectra toolkit."""
