"""Implicational BCI/BCK logic workbench."""
