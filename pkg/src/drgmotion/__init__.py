"""Motion lower-bound certificates for distance-regular graphs."""

__version__ = "0.1.0"
