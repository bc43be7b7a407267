import pytest

from quasileib.families import (
    abelian,
    almost_abelian_lie,
    char2_nonperfect,
    char2_nonperfect_minimal,
    default_anisotropic_gram,
    extraspecial_sum,
    k2,
    non_lie_almost_abelian,
    two_dim_nilpotent_cyclic,
    two_dim_solvable_cyclic,
)
from quasileib.fields import GF2, GF3, QQ, FunctionField

F2T = FunctionField(2)


def finite_family_corpus(max_dim: int = 4):
    """Every family instance over GF(2) and GF(3) of dimension <= max_dim,
    as (label, algebra) pairs.  The characteristic-2 non-perfect families
    cannot exist over finite fields and are absent by construction."""
    out = []
    for fld, tag in ((GF2, "gf2"), (GF3, "gf3")):
        for d in range(1, max_dim + 1):
            out.append((f"abelian_{d}/{tag}", abelian(fld, d)))
        for d in range(2, max_dim + 1):
            out.append((f"almost_abelian_lie_{d}/{tag}", almost_abelian_lie(fld, d)))
        for k in range(1, max_dim):
            out.append(
                (f"non_lie_almost_abelian_{k}/{tag}", non_lie_almost_abelian(fld, k))
            )
        out.append((f"two_dim_nilpotent_cyclic/{tag}", two_dim_nilpotent_cyclic(fld)))
        out.append((f"two_dim_solvable_cyclic/{tag}", two_dim_solvable_cyclic(fld)))
        for rank in (1, 2):
            gram = default_anisotropic_gram(fld, rank)
            for dim_z in range(0, max_dim - rank):
                out.append(
                    (
                        f"extraspecial_r{rank}_z{dim_z}/{tag}",
                        extraspecial_sum(fld, gram, dim_z=dim_z),
                    )
                )
    out.append(("k2/gf2", k2(GF2)))
    return out


def nine_default_instances():
    """One representative build per family constructor."""
    return {
        "abelian": abelian(GF3, 3),
        "almost_abelian_lie": almost_abelian_lie(QQ, 3),
        "k2": k2(GF2),
        "non_lie_almost_abelian": non_lie_almost_abelian(GF2, 2),
        "two_dim_nilpotent_cyclic": two_dim_nilpotent_cyclic(QQ),
        "two_dim_solvable_cyclic": two_dim_solvable_cyclic(GF3),
        "extraspecial_sum": extraspecial_sum(
            GF3, default_anisotropic_gram(GF3, 2), dim_z=1
        ),
        "char2_nonperfect": char2_nonperfect(F2T),
        "char2_nonperfect_minimal": char2_nonperfect_minimal(F2T),
    }


SYMMETRIC_FAMILIES = (
    "extraspecial_sum",
    "char2_nonperfect",
    "char2_nonperfect_minimal",
)


@pytest.fixture(scope="session")
def family_corpus():
    return finite_family_corpus()


@pytest.fixture(scope="session")
def nine_families():
    return nine_default_instances()
