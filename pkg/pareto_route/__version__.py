"""Version information for pareto-route.

Kept in its own module so the package and the packaging tools can both
import it without side effects.
"""

__version__ = "1.0.0"
