# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = 'GeodivPy'
copyright = '2024, MIT License'
author = 'GeodivPy developers'
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc',     # Pulls docstrings from Python code
              'sphinx.ext.autosummary', # Summary tables of the modules
              'sphinx.ext.mathjax',     # Formulas in the usage notes
              'numpydoc'                # docstring format used
              ]

autosummary_generate = True
autosummary_imported_members = False

numpydoc_show_class_members = False

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']


# -- Options for HTML output -------------------------------------------------

html_theme = 'bizstyle'
html_static_path = ['_static']

import sys
import os
import pathlib

pathlib.Path(os.path.join(os.path.dirname(os.path.abspath(__file__)), 
                          '_static/')).mkdir(exist_ok=True)

# -- Path to Module -------------------------------------------------
sys.path.insert(0, pathlib.Path(__file__).parents[2].resolve().as_posix())
