"""Inductive valuations on polynomial rings via key polynomials."""
