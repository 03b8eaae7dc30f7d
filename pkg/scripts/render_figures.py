"""Draw the two planar extremal families as SVG files."""

import argparse
from pathlib import Path

from hollow_helly.extremal import FacetFamilySpec, VertexFamilySpec, gen_facet_family, gen_vertex_family
from hollow_helly.geometry import point
from hollow_helly.svg import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    spec = FacetFamilySpec.default(2)
    (out / "facet_family.svg").write_text(render_svg(gen_facet_family(spec), [spec.p]).to_svg())
    vf = gen_vertex_family(VertexFamilySpec.default(2))
    corners = [point(x, y) for x in (0, 1) for y in (0, 1)]
    (out / "vertex_family.svg").write_text(render_svg(vf, corners).to_svg())
    print(f"wrote {out / 'facet_family.svg'} and {out / 'vertex_family.svg'}")


if __name__ == "__main__":
    main()
