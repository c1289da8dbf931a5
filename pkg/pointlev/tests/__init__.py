"""
Test suite for pointlev, run with pytest
"""
