"""Free cubic implication algebras on finitely many generators."""

__version__ = "0.1.0"
