"""Utilities for maxsobolev."""
