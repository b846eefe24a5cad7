"""Figure rendering for ergoloss CSV sweep outputs."""

from .render import FigureSpec, RenderError, discover, render

__version__ = "1.0.0"

__all__ = ["FigureSpec", "RenderError", "discover", "render"]
