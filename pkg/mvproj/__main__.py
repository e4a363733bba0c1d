"""
Entry point for `python -m mvproj`
"""

from mvproj.main import run

run()
