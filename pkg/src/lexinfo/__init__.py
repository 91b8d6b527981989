"""Information-theoretic model of vocabulary learning on binary word-meaning matrices."""

from lexinfo.errors import LexInfoError
from lexinfo.lexmatrix import LexicalMatrix, new_matrix

__version__ = "0.1.0"

__all__ = ["LexInfoError", "LexicalMatrix", "new_matrix", "__version__"]
