# src/__init__.py
"""
Irrational Base Nets - Main Package
"""

# src/models/__init__.py
"""
Digit Words, Intervals and Point Sets for Irrational Base Nets
"""

# src/utils/__init__.py
"""
Generators, Verification and Discrepancy for Irrational Base Nets
"""
