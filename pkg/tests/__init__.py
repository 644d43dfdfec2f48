"""Tests for the git_stability package."""

from __future__ import annotations
