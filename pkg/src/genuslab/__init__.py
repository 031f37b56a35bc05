"""Class groups of imaginary quadratic discriminants, subset sums in finite
abelian groups, genus theory and desk-scale census experiments."""

from .kernels import BACKEND
from .qforms import ClassGroup, Discriminant, QuadForm, enumerate_class_group, reduce

__version__ = "0.1.0"

__all__ = ["BACKEND", "ClassGroup", "Discriminant", "QuadForm", "enumerate_class_group", "reduce"]
