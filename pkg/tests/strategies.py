"""Hypothesis strategies for random documents."""

from hypothesis import strategies as st

PRIMES = [2, 3, 5, 7, 101, 65521]


@st.composite
def quiver_text(draw, name):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, 4))
    verts = [f"v{i}" for i in range(n)]
    k = draw(st.integers(0, 4))
    arrows = [(f"x{i}", draw(st.sampled_from(verts)), draw(st.sampled_from(verts))) for i in range(k)]
    rels = []
    # random composable paths of length 2..3 grouped by endpoints
    paths = []
    for a in arrows:
        for b in arrows:
            if b[2] == a[1]:
                paths.append(((a[0], b[0]), b[1], a[2]))
    for _ in range(draw(st.integers(0, 2))):
        if not paths:
            break
        path, s, t = draw(st.sampled_from(paths))
        parallel = [q for q, s2, t2 in paths if (s2, t2) == (s, t)]
        terms = draw(st.lists(st.sampled_from(parallel), min_size=1, max_size=2, unique=True))
        coeffs = [draw(st.integers(1, p - 1)) if p > 2 else 1 for _ in terms]
        body = []
        for j, (c, q) in enumerate(zip(coeffs, terms)):
            sign = "-" if (j and draw(st.booleans())) else ("+" if j else "")
            body.append(f"{sign} {c}*{'*'.join(q)}".strip())
        rels.append(" ".join(body))
    m = draw(st.integers(2, 4))
    text = f"algebra {name} {{ field {p}; vertices {' '.join(verts)};"
    if arrows:
        text += " arrows " + ", ".join(f"{a}: {s} -> {t}" for a, s, t in arrows) + ";"
    if rels:
        text += " relations " + ", ".join(rels) + ";"
    text += f" nilpotency {m}; }}"
    return text, verts, arrows, p


@st.composite
def documents(draw):
    qtext, verts, arrows, p = draw(quiver_text("Q"))
    parts = [qtext]
    dims = {v: draw(st.integers(0, 2)) for v in verts}
    body = "dims " + " ".join(f"{v}={d}" for v, d in dims.items()) + ";"
    for a, s, t in arrows:
        if draw(st.booleans()):
            rows = [[draw(st.integers(-3, p + 3)) for _ in range(dims[s])] for _ in range(dims[t])]
            if dims[t] and dims[s]:
                body += f" arrow {a} = [" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in rows) + "];"
    parts.append(f"module M over Q {{ {body} }}")
    members = draw(st.lists(st.sampled_from(["M", f"S{verts[0]}", f"P{verts[-1]}", "A", "DA"]), max_size=3))
    parts.append(f"list L over Q {{ {' '.join(members)} }}")
    shuffled = draw(st.permutations(verts))
    cut = draw(st.integers(1, len(verts)))
    blocks = [shuffled[:cut]] + ([shuffled[cut:]] if shuffled[cut:] else [])
    parts.append("glue G from Q { blocks " + " ".join("{" + " ".join(b) + "}" for b in blocks) + "; }")
    parts.append("chain C { G in Q }")
    return "\n".join(parts)
