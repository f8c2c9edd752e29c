"""Bundled manifest fixtures; regenerate with tools/make_fixtures.py."""
