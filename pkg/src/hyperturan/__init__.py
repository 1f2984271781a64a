from hyperturan.cli import main

__all__ = ["main"]
