"""
Scripts auxiliares do gkgalois.
"""
