# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Formula notes attached to reports.

The characterization formulas this package evaluates appear in more than
one written form. Each entry records which form is implemented; reports
carry the keys that affect their numbers.
"""

__all__ = ['NOTES', 'notes_for']

NOTES = {
    'series-factorial': (
        "Coefficients include the 1/i! factor of the matrix form. The "
        "series form written without i! is not implemented."),
    'inverse-integer-order': (
        "For positive integer orders the inverse coefficients are taken "
        "from the multiplicative recurrence (the Gamma ratio is read as "
        "its limit)."),
    'w-gamma-argument': (
        "Tail-sum triangle entries use s_(j-k) = c_(j-k)(-alpha), "
        "consistent with the R-transform. The variant with "
        "Gamma(-alpha + j - k + 1) differs by a sign in the Gamma argument "
        "and is not used."),
    'mf3-index': (
        "In the bounded tail-sum condition, coefficients c_(j-k) with "
        "j < k are taken as zero, consistent with triangularity."),
    'mf5-inner-index': (
        "The vanishing tail-sum condition for the bounded domain is "
        "evaluated on w_(nk) (inner sum from j = n), the form required "
        "by W in (l_inf, c_0)."),
    'table-grouping': (
        "The class table shows 8 cell labels while 12 condition bundles "
        "are defined. Bundles follow the three-column grouping "
        "[1,4,7,10] / [2,5,8,11] / [3,6,9,12]."),
    'condition-3b': (
        "Condition 3B is evaluated as written, sup_n |sum_k a_nk - "
        "gamma_n| = 0; '< inf' may have been intended."),
    'condition-2b': (
        "Bundles 8 and 9 cite condition 2B, which is never defined; it is "
        "evaluated as 2A."),
    'condition-7c': (
        "Condition 7C is evaluated as written, lim_n sum_k (a_nk - "
        "alpha_k) = 0, without absolute values."),
    'hmnc-row-norm': (
        "The (l_inf, l_inf) norm of the tail matrices is read as the "
        "supremum of row l1 norms."),
    'beta-sign': (
        "The c-domain to c criterion uses |sum_k alpha_k - gamma_n + "
        "beta| (the delta_n form); a variant with -beta also appears."),
    'schauder-truncation': (
        "c^(-1) is truncated to the window before it is scaled by xi. "
        "Taking the series first and truncating after scaling leaves a "
        "boundary error in the last entries; the reported reconstruction "
        "residual measures what remains on the window."),
}


def notes_for(*keys):
    """Return the ``{key: text}`` subset for ``keys`` in sorted order."""
    return {key: NOTES[key] for key in sorted(set(keys))}
