"""Test suite of the page-curvature package."""
