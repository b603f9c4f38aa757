"""Experiment pipeline: file formats, cell execution, reporting, plotting, CLI."""
