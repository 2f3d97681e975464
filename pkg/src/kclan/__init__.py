"""K-orbit closures on GL(n) flag varieties: clans, small resolutions and
equivariant Chern-Mather classes."""

__version__ = "0.1.0"
