"""Integer Cech cohomology of substitution tilings by the Anderson-Putnam method."""

__version__ = "0.1.0"
