"""Frobenius statistics for Jacobians of genus 1 and 2 curves."""

__version__ = "0.1.0"
