"""theoremine: mine and prove plane-geometry theorems from raster diagrams.

The pipeline runs in five stages, each usable on its own:

  recognize  -- detect circles, line segments, and points in an image,
                then bind the letter labels drawn next to them
  relations  -- numerically mine basic geometric relations from the scene
  candidates -- boil the relation set down to candidate propositions
  verify     -- rule out false propositions by random instantiation of the
                triangularized hypothesis system
  prove      -- prove the survivors by pseudo-remainder computation over
                characteristic sets with exact rational arithmetic
"""

__version__ = "0.1.0"
