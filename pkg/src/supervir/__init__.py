"""Exact computations in Whittaker modules over the N=1 super-Virasoro algebras."""
