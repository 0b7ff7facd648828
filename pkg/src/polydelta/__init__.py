"""Exact lattice-polytope invariants: h*-vectors, empty depth, Δ-genus and
the inequality ``#(P∩M) - v(P) <= e(P) + 1`` with its equality cases."""

__version__ = "0.1.0"
