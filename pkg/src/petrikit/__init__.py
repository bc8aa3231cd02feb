"""Exact computations with Petri maps, their higher-order tower, and Schiffer
deformations on odd hyperelliptic curves over Q."""

__version__ = "0.1.0"
