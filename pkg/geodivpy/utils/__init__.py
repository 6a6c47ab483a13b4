"""
Module of utility functions for experiment configuration and output files.
"""
