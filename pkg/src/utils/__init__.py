"""
Generators, Verification and Discrepancy for Irrational Base Nets
"""
