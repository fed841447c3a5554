"""Finite and free quasigroup toolkit.

Tables are validated Latin squares; report-shaped results come back as plain
dicts. See the project README for the term grammar and the .qg file format.
"""

import json as _json

from _qgtk import (  # noqa: F401
    BoundError,
    BudgetError,
    ConstructError,
    DeriveError,
    FormatError,
    MissingEqualsError,
    ModelError,
    Permutation,
    QgParseError,
    Table,
    TableError,
    catalog,
    ch_quasigroup,
    enumerate_automorphisms,
    enumerate_latin_squares,
    left_distributive_quasigroup,
    linear_quasigroup,
    normalize_term,
    quasicommutator,
    random_latin_square,
    read_qg,
    read_qg_file,
    resolve_group,
    t_quasigroup,
    write_qg,
)
from _qgtk import analyze_group as _analyze_group
from _qgtk import check_engel_isotopy as _check_engel_isotopy
from _qgtk import check_identity as _check_identity
from _qgtk import check_nilpotent_isotopy as _check_nilpotent_isotopy
from _qgtk import classify as _classify
from _qgtk import decompose_t as _decompose_t
from _qgtk import derive_identity  # noqa: F401
from _qgtk import oracle_isotopy as _oracle_isotopy
from _qgtk import words_equal as _words_equal


def analyze_group(table):
    return _json.loads(_analyze_group(table))


def check_identity(table, identity, budget=100_000_000, u_element=0):
    return _json.loads(_check_identity(table, identity, budget, u_element))


def check_nilpotent_isotopy(table, n, budget=100_000_000):
    return _json.loads(_check_nilpotent_isotopy(table, n, budget))


def check_engel_isotopy(table, n):
    return _json.loads(_check_engel_isotopy(table, n))


def classify(table, max_class=0, decompose=False, budget=100_000_000):
    return _json.loads(_classify(table, max_class, decompose, budget))


def oracle_isotopy(table):
    return _json.loads(_oracle_isotopy(table))


def decompose_t(table):
    result = _json.loads(_decompose_t(table))
    return result if result["found"] else None


def words_equal(lhs, rhs, medial=False):
    return _json.loads(_words_equal(lhs, rhs, medial))
