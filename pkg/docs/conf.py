# -*- coding: utf-8 -*-
#
# Sphinx configuration for the pointlev documentation

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import pointlev


# -- Project information -----------------------------------------------------

project = 'pointlev'
version = pointlev.__version__
release = pointlev.__version__


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autosummary',
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
]

autosummary_generate = True
napoleon_google_docstring = False
napoleon_use_param = False
napoleon_use_ivar = True

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'default'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'pointlevdoc'

man_pages = [
    (master_doc, 'pointlev', 'pointlev Documentation', ['pointlev developers'], 1)
]
