# __init__.py
"""Curve orderings, analysis and path files for 3D volumes."""
