"""Rendering of khhg CSV outputs into publication-style figures."""

from khhg_plots.render import RecipeError, render

__all__ = ["RecipeError", "render"]
