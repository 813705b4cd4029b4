"""Named systems: published diagrams, their vectors and checkable claims.

Claim tags understood by :func:`ksvectors.pipeline.check_claims`:

``no_01_state`` / ``has_01_state``
    verdict of the 0-1 state search;
``discrete_solvable:{-1,0,1}`` / ``no_discrete_solution:{-1,0,1}``
    exact search over the listed component values;
``infeasible``
    no real unit vectors (preliminary pass, then interval branch-and-prune);
``solvable``
    the interval solver reaches a candidate box;
``contains:<name>`` / ``not_contains:<name>``
    subdiagram containment of another entry.

Entries whose text had to be corrected keep the printed text in
``printed``; entries rebuilt from a verbal description are flagged
``reconstructed``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .diagram import Diagram, parse_mmp, parse_numeric, serialize_numeric
from .solver.verify import VectorSystem, parse_solution


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    mmp: str
    n: int
    claims: tuple[str, ...] = ()
    known_solution: str | None = None
    description: str = ""
    printed: str | None = None
    reconstructed: bool = False
    allow_short: bool = False
    numeric: bool = False
    notes: str = ""

    def diagram(self) -> Diagram:
        if self.numeric:
            return parse_numeric(self.mmp, self.allow_short)
        return parse_mmp(self.mmp, self.allow_short)

    def solution(self) -> VectorSystem | None:
        if self.known_solution is None:
            return None
        return parse_solution(self.known_solution, self.diagram())


def braces_to_solution(labels: str, text: str) -> str:
    """Turn ``{1,0,1}{0,1,0}...`` listed for ``labels`` into the solution file format."""
    body = "".join(text.split()).strip("{}")
    vecs = body.split("}{")
    if len(vecs) != len(labels):
        raise ValueError(f"{len(vecs)} vectors for {len(labels)} labels")
    return "".join(f"{lab}: {' '.join(v.split(','))}\n" for lab, v in zip(labels, vecs))


def _labels(text: str) -> str:
    seen = []
    for c in text:
        if c.isalnum() and c not in seen:
            seen.append(c)
    return "".join(seen)


# -- constructed systems ------------------------------------------------

def _peres_24() -> str:
    """All orthogonal 4-tuples among the 24 rays of Peres' set."""
    rays = set()
    for vec in product((-1, 0, 1), repeat=4):
        nz = [x for x in vec if x]
        if len(nz) in (1, 2, 4):
            first = nz[0]
            rays.add(tuple(x * first for x in vec))
    rays = sorted(rays, key=lambda r: (sum(x != 0 for x in r), [-x for x in r]))
    assert len(rays) == 24

    def dot(u, w):
        return sum(x * y for x, y in zip(u, w))

    quads = [q for q in combinations(range(24), 4) if all(dot(rays[i], rays[j]) == 0 for i, j in combinations(q, 2))]
    from .diagram import ALPHABET
    return ",".join("".join(ALPHABET[i] for i in q) for q in quads), [rays[i] for i in range(24)]


def _peres_solution() -> str:
    from .diagram import ALPHABET
    _, rays = _peres_24()
    return "".join(f"{ALPHABET[i]}: {' '.join(map(str, r))}\n" for i, r in enumerate(rays))


HEXAGON_BLOCK = "123,345,567,789,9AB,BC1,2D8"


def _ks192() -> str:
    """Fifteen 13-vertex hexagon blocks in three groups of five, glued into one system.

    Within each group the first two blocks share their vertex ``1``.  The
    thirteen extra triads tie the groups together: the ``7`` ends of the
    i-th blocks, the ``1`` ends of blocks shifted by group, and the centres
    ``D`` of the first three blocks.  Only the totals (192 vertices, 118
    edges) are taken from the description; the gluing itself is invented.
    """
    block = parse_mmp(HEXAGON_BLOCK)
    ids: dict[tuple, int] = {}

    def vid(g: int, i: int, label: str) -> int:
        if label == "1" and i == 1:
            i = 0   # shared vector of the group
        key = (g, i, label)
        if key not in ids:
            ids[key] = len(ids) + 1
        return ids[key]

    edges = []
    for g in range(3):
        for i in range(5):
            for e in block.edges:
                edges.append([vid(g, i, block.labels[v]) for v in e])
    for i in range(5):
        edges.append([vid(0, i, "7"), vid(1, i, "7"), vid(2, i, "7")])
    for i in range(5):
        edges.append([vid(0, i, "1"), vid(1, (i + 1) % 5, "1"), vid(2, (i + 2) % 5, "1")])
    for i in range(3):
        edges.append([vid(0, i, "D"), vid(1, i, "D"), vid(2, i, "D")])
    return ",".join(" ".join(map(str, e)) for e in edges)


# -- the catalog ----------------------------------------------------------

_ENTRIES: list[CatalogEntry] = []


def _add(**kw) -> None:
    _ENTRIES.append(CatalogEntry(**kw))


# smallest diagrams without 0-1 states
_add(name="triangle-7-5", mmp="123,345,561,275,476", n=3, claims=("no_01_state", "infeasible"),
     description="smallest 3-dim diagram without 0-1 states (loops of size 3)")
_add(name="hexagon-15-11", mmp="123,345,567,789,9AB,BC1,CD6,2DA,2E8,4FA,CEF", n=3,
     claims=("no_01_state", "infeasible"), description="15-11, loops of size 4 (hexagon)")
_add(name="heptagon-15-11", mmp="123,345,567,789,9AB,BCD,DE1,4AE,28C,2FA,6FD", n=3,
     claims=("no_01_state", "infeasible"), description="15-11, loops of size 4 (heptagon)")
_add(name="fig2d-19-13", mmp="123,345,567,789,9AB,BCD,DEF,FG1,2IA,6IE,4HC,8JG,HIJ", n=3,
     claims=("no_01_state",), description="19-13, loops of size 5")
_add(name="heptagon-19-13", mmp="123,345,567,789,9AB,BCD,DE1,EI7,2F9,4GB,IJG,FJH,CH6", n=3,
     claims=("no_01_state",), description="19-13, loops of size 5 (heptagon)")
_add(name="fig2a-6-3", mmp="1234,2356,1456", n=4, claims=("no_01_state", "infeasible"),
     description="smallest 4-dim diagram without 0-1 states (loops of size 2)")
_add(name="fig2b-10-5", mmp="1234,4567,7891,35A8,29A6", n=4, claims=("no_01_state", "infeasible"),
     description="10-5, loops of size 3")
_add(name="fig2c-22-11", mmp="1234,4567,789A,ABCD,DEFG,GHI1,FJK5,HJMC,3KL8,IBL6,29ME.", n=4,
     claims=("no_01_state",), description="22-11, loops of size 4")
_add(name="pentagon-22-11", mmp="1234,4567,789A,ABCD,DEF1,FGH5,EMJ6,2GLC,3IJ8,HIKB,MLK9", n=4,
     claims=("no_01_state",), description="22-11, loops of size 4 (pentagon)")
_add(name="dodecagon-38-19",
     mmp="1234,1567,289A,5BCD,8BEF,3GHI,6JKL,GJMN,CHOP,EMQR,OQST,RUVW,"
         "4UXY,9SZa,FIbc,KTXb,7VZc,ALPW,DNYa", n=4,
     claims=("no_01_state",), description="38-19, loops of size 5 (dodecagon)")

SMALLEST = ("triangle-7-5", "hexagon-15-11", "heptagon-15-11", "fig2d-19-13", "heptagon-19-13",
            "fig2a-6-3", "fig2b-10-5", "fig2c-22-11", "pentagon-22-11", "dodecagon-38-19")

# 4-dim systems with solutions
_add(name="cabello-18-9", mmp="1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH", n=4,
     claims=("no_01_state", "discrete_solvable:{-1,0,1}", "solvable"),
     description="18-9, loops of size 3; isomorphic to Cabello et al.")

_FIG3B = "1234,4567,789A,ABCD,DEFG,GHI1,FNM8,GOL7,HJK6,DNK4,AMJ1,35CE,B29I"
_add(name="fig3b-24-13", mmp=_FIG3B, n=4,
     printed="1234,4567,789A,ABCD,DEFG,GHI1,FNM8,GOL7,HJK6,DNK4,AMJ1,35CE,B29J",
     claims=("no_01_state", "no_discrete_solution:{-1,0,1}", "not_contains:cabello-18-9"),
     known_solution=braces_to_solution(
         "123456789ABCDEFGHIJKLMNO",
         "{1,0,1,1}{1,0,-2,1}{1,0,0,-1}{0,1,0,0}{0,0,1,0}{0,0,0,1}{1,0,0,0}{0,2,2,1}{0,2,-1,-2}"
         "{0,1,-2,2}{3,2,2,1}{1,-2,0,1}{-1,0,1,1}{1,1,0,1}{1,-1,1,0}{0,1,1,-1}{1,1,-1,0}{1,-1,0,-1}"
         "{1,-2,-1,0}{1,0,1,0}{0,0,1,1}{3,2,-1,-2}{1,0,-1,2}{0,2,-1,1}"),
     description="24(22)-13, loops of size 3, not containing cabello-18-9",
     notes="last edge printed as B29J; the printed vectors satisfy B29I, which also gives "
           "the 22 shared vertices of the 24(22) label")

_add(name="peres-19-10", mmp="1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,678J", n=4,
     printed="1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,678I",
     claims=("no_01_state", "discrete_solvable:{-1,0,1}", "contains:cabello-18-9"),
     description="19(18)-10, loops of size 2",
     notes="printed last edge 678I has only 18 vertices and forces I onto the ray of 9; "
           "a fresh 19th vertex J matches the 19(18) label")

_add(name="fig4a-20-11", mmp="1234,4567,789A,ABCD,DEFG,GHI1,68FH,12JI,1J9B,345K,4KEC", n=4,
     claims=("no_01_state", "not_contains:cabello-18-9"),
     known_solution=braces_to_solution(
         "123456789ABCDEFGHIJK",
         "{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}{1,0,0,-1}{1,1,1,1}{1,-1,-1,1}{1,1,-1,-1}"
         "{1,0,1,0}{0,1,0,1}{1,0,-1,0}{1,1,1,-1}{1,-1,1,1}{1,-1,-1,-1}{0,0,1,-1}{1,1,0,0}{1,-1,0,0}"
         "{0,0,1,0}{0,1,0,0}{1,0,0,1}"),
     description="20-11, loops of size 2, not containing cabello-18-9")
_add(name="kernaghan-20-11", mmp="1234,4567,789A,ABCD,DEFG,GHI1,68FH,2IAK,345J,4JEC,9ABK", n=4,
     claims=("no_01_state", "not_contains:cabello-18-9", "solvable"),
     description="20-11, isomorphic to Kernaghan's system")

_add(name="fig4c-22-13",
     mmp="1234,4567,789A,ABCD,DEFG,GHI1,2ILA,345J,4JEC,678K,7KMG,9ABL,FGHM", n=4,
     claims=("no_01_state", "not_contains:cabello-18-9", "not_contains:fig4a-20-11",
             "not_contains:kernaghan-20-11"),
     known_solution=braces_to_solution(
         "123456789ABCDEFGHIJKLM",
         "{1,1,0,0}{1,-1,0,0}{0,0,1,0}{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}"
         "{1,0,0,1}{1,-1,-1,-1}{1,1,1,-1}{1,-1,1,1}{1,0,-1,0}{0,1,0,1}{1,0,1,0}{1,1,-1,-1}{1,-1,-1,1}"
         "{1,-1,1,-1}{0,0,1,1}{0,1,0,0}{1,0,0,-1}{1,1,-1,1}{1,1,1,1}"),
     description="22-13, loops of size 2")
_add(name="fig4d-22-13",
     mmp="1234,4567,789A,ABCD,DEFG,GHI1,12IJ,345K,678L,GML7,1J9B,4KEC,FGHM", n=4,
     claims=("no_01_state", "not_contains:cabello-18-9", "not_contains:fig4a-20-11",
             "not_contains:kernaghan-20-11"),
     known_solution=braces_to_solution(
         "123456789ABCDEFGHIJKLM",
         "{0,0,0,1}{1,0,0,0}"
         "{0,1,1,0}{0,1,-1,0}{1,0,0,-1}{1,1,1,1}{1,-1,-1,1}{1,-1,1,-1}{1,1,0,0}{0,0,1,1}{1,-1,0,0}"
         "{1,1,1,-1}{1,1,-1,1}{1,-1,-1,-1}{0,1,0,-1}{1,0,1,0}{1,0,-1,0}{0,1,0,0}{0,0,1,0}{1,0,0,1}"
         "{1,1,-1,-1}{0,1,0,1}"),
     description="22-13, loops of size 2")

_PERES24, _ = _peres_24()
_add(name="peres-24-24", mmp=_PERES24, n=4, reconstructed=True,
     claims=("no_01_state", "discrete_solvable:{-1,0,1}", "contains:cabello-18-9",
             "contains:peres-19-10", "contains:fig4a-20-11", "contains:kernaghan-20-11",
             "contains:fig4c-22-13", "contains:fig4d-22-13"),
     known_solution=_peres_solution(),
     description="Peres' 24 rays with all 24 orthogonal tetrads",
     notes="edge list built from the rays: permutations of (1,0,0,0), (1,+-1,0,0), (1,+-1,+-1,+-1)")

# 3-dim systems
_CK = ("123,145,267,2AB,3CD,CEF,CGm,DIn,DKL,6EM,6KN,7IO,7GP,4GQ,4Ko,5Ep,5IS,ALW,AFX,"
       "BSY,BQZ,3cf,3de,cOh,dMT,cN9,dP8,eSl,fQg,iR1,jk1,iFa,jLb,kOU,kMV,RPH,RNJ")
_add(name="ck-51-37", mmp=_CK, n=3, claims=("no_01_state",),
     known_solution=braces_to_solution(
         _labels("123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnop"),
         "{0,0,1}{1,0,0}{0,1,0}{1,-1,0}{1,1,0}"
         "{0,1,-1}{0,1,1}{2,5,1}{2,5,-1}{0,1,2}{0,2,-1}{1,0,1}{1,0,-1}{1,-1,-1}{1,2,-1}{1,1,-1}"
         "{2,-1,-5}{1,-1,1}{2,-1,5}{1,1,1}{1,-2,1}{2,1,1}{2,-1,-1}{2,1,-1}{2,-1,1}{1,1,2}{1,2,0}"
         "{1,-1,-2}{2,-5,1}{2,1,5}{2,1,-5}{5,2,-1}{5,-2,1}{5,1,2}{5,-1,-2}{1,2,5}{1,-2,-5}{1,0,2}"
         "{1,0,-2}{2,0,1}{2,0,-1}{1,-5,2}{2,-5,-1}{2,-1,0}{2,1,0}{1,-2,0}{1,5,-2}{1,-2,-1}{1,2,1}"
         "{1,1,-2}{1,-1,2}"),
     description="Conway-Kochen system with all 51 vectors")
_add(name="bub-49-36",
     mmp="123,345,167,AB6,AC4,DEG,DFH,F9O,E8V,5JI,7MN,GIa,HNh,7LT,5KR,DAe,UTS,PRS,1GP,3HU,"
         "3Vj,Pgh,Uba,1Oi,VZg,OYb,6Xk,4Wn,Sde,dci,dfj,imn,jlk,akQ,hnQ,eQ2", n=3,
     claims=("no_01_state",), description="Bub's system")
_add(name="ks-27", mmp="123,345,567,789,9AB,BC1,4DA,EFG,GHI,IJK,KLM,MNO,OPE,HQN,1RK,7RE", n=3,
     claims=("has_01_state",),
     known_solution=braces_to_solution(
         "123456789ABCDEFGHIJKLMNOPQR",
         "{0,1,-2}{5,2,1}{1,-2,-1}{1,0,1}{1,1,-1}"
         "{2,-1,1}{0,1,1}{2,1,-1}{1,-1,1}{1,0,-1}{1,2,1}{5,-2,-1}{0,1,0}{0,1,-1}{2,1,1}{1,-1,-1}"
         "{1,1,0}{1,-1,2}{5,1,-2}{0,2,1}{5,-1,2}{1,1,-2}{1,-1,0}{1,1,1}{2,-1,-1}{0,0,1}{1,0,0}"),
     description="Kochen-Specker 27(17)-point graph")
_add(name="peres-57-40",
     mmp="123,39R,89A,47D,56E,DRE,EFG,CBD,NML,LKE,DJQ,QST,PJI,HKO,RVX,RUW,14Y,1Z5,4aA,5b8,8gB,"
         "AhF,7cH,6dI,CiO,GjP,7eM,6fS,ClN,GkT,NqX,PsV,OrU,MmU,SnV,HoX,IpW,TtW,2uB,2vF", n=3,
     claims=("no_01_state",), description="Peres' 57(33) 3-dim system")
_add(name="tkadlec-dual-peres",
     mmp="123,345,567,869,9AH,8C2,7DG,HG1,4BA,CBD,6gE,BhE,3IJ,2RO,1VU,VPN,UML,JKN,"
         "OKL,IQM,RQP,jSK,jiQ,UWX,Veb,Gfa,HCZ,ZYb,XYa,WdC,edf,TFd,TcY,1kE,1lj,1mT", n=3,
     claims=("has_01_state",), description="diagram proposed as dual to Peres' 57(33)")
_add(name="tkadlec-dual-ck",
     mmp="123,145,16C,768,7HK,4FB,GEC,89A,5IJ,HGI,EF9,KBD,JAD,CDV,KLM,"
         "BON,DgS,VUT,SP2,QRS,MQU,NPT,c6R,GPd,VWX,X3Y,3Ze,EZQ,abJ,YfA,cde,ehD,acW", n=3,
     claims=("no_01_state", "infeasible"), description="diagram proposed as dual to Conway-Kochen")

# dropping vectors that lie on one edge
_add(name="fig5a-reduced", mmp="123,35,567,789,9B,B1,28", n=3, allow_short=True,
     claims=("no_01_state", "solvable"), description="hexagon block with single-edge vectors 4,6,A,C,D dropped")
_add(name="fig5a-with-4", mmp="123,345,567,789,9B,B1,28", n=3, allow_short=True,
     claims=("has_01_state", "solvable"), description="reduced hexagon block with 4 restored")
_add(name="fig5a-with-D", mmp="123,35,567,789,9B,B1,2D8", n=3, allow_short=True,
     claims=("has_01_state", "solvable"), description="reduced hexagon block with D restored")
_add(name="hexagon-block", mmp=HEXAGON_BLOCK, n=3, claims=("has_01_state", "solvable"),
     description="13-vertex hexagon block with all vectors")

_FIG5B_MINUS_K = "1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,14J"
_add(name="fig5b-minus-k", mmp=_FIG5B_MINUS_K, n=4, allow_short=True, reconstructed=True,
     claims=("no_01_state",),
     known_solution=braces_to_solution(
         "123456789ABCDEFGHIJ",
         "{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}{1,0,0,-1}{1,-1,-1,1}{1,1,1,1}"
         "{1,-1,1,-1}{0,1,0,-1}{1,0,-1,0}{0,1,0,1}{1,-1,1,1}{1,1,1,-1}{1,1,-1,1}{0,0,1,1}{1,-1,0,0}"
         "{1,1,0,0}{0,0,1,0}{1,-1,-1,0}"),
     description="system with K dropped; edge list read off the printed 19 vectors",
     notes="the printed vectors have exactly the nine tetrads of cabello-18-9; J is orthogonal "
           "only to 1, 4 and H, so its edge is 14J (1HJ is the other choice)")
_add(name="fig5b-full", mmp="1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,14JK", n=4,
     reconstructed=True, claims=("no_01_state", "contains:cabello-18-9"),
     description="reconstructed full system: K completes the edge of J",
     notes="published as having no solution; this reconstruction has one (K = (2,1,1,0))")

_KS192 = _ks192()
_add(name="ks-192", mmp=_KS192, n=3, numeric=True, reconstructed=True, claims=(),
     description="Kochen-Specker 192-vector system from 15 hexagon blocks",
     notes="only the counts 192 vertices / 118 edges are taken from the description")

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def catalog_get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None


def catalog_names() -> list[str]:
    return list(CATALOG)
