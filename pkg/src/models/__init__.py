"""
Digit Words, Intervals and Point Sets for Irrational Base Nets
"""
