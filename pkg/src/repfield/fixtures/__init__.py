"""Bundled order and scenario configs."""
