"""Appariements de Tate sesquilinéaires et attaques sur les isogénies orientées."""

__version__ = "0.1.0"
