# Sphinx configuration for the fringecal documentation.

import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join('..', 'src')))

# -- Project information -----------------------------------------------------

project = 'fringecal'
copyright = '2026, fringecal developers'
author = 'fringecal developers'
release = '1.0.0'

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              ]

# Docstrings use the "|  " line-block layout, keep member order as written
autodoc_member_order = 'bysource'
autodoc_default_options = {'members': True, 'undoc-members': False}

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
