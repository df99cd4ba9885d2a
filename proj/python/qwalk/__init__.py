from ._qwalk import Model, QwalkError, analyze, certify, counts, expand

__all__ = ["Model", "QwalkError", "analyze", "certify", "counts", "expand"]
