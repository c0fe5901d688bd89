"""Filtered multiplicative bases of modular group algebras of p-groups."""

from __future__ import annotations

__version__ = "0.1.0"
