"""Small constructed codes shared by the test modules."""

from functools import lru_cache

from regencert.constructions import layered, mds_msr, rbt_mbr, replication, scrambled


@lru_cache(maxsize=None)
def constructed_codes():
    return (
        layered(4, 3, 2),
        layered(3, 2, 3),
        rbt_mbr(5, 3, 11),
        rbt_mbr(4, 3, 7),
        mds_msr(6, 3, 3, 7),
        mds_msr(4, 2, 3, 5),
        replication(3),
        replication(4, size=2, k=3, d=3, q=3),
        scrambled(layered(4, 3, 2), 1),
        scrambled(rbt_mbr(4, 2, 7), 2),
    )


def code_ids():
    return [c.name or f"code{t}" for t, c in enumerate(constructed_codes())]
