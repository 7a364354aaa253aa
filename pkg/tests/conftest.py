"""Keeps this directory importable so tests can share the helpers module."""
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))
