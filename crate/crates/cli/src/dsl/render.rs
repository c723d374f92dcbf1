use std::fmt::Write;

use spbw_core::Mode;

use super::doc::{Options, PresentationDoc};

/// Canonical text of a document; parsing it back gives an equal document.
pub fn render_presentation(doc: &PresentationDoc) -> String {
    let alg = &doc.algebra;
    let pres = alg.presentation();
    let sym = alg.symbols();
    let mut out = String::new();
    let _ = writeln!(out, "name {}", doc.name);
    for (kw, names) in [("params", &sym.params), ("coeffs", &sym.coeffs), ("gens", &sym.gens)] {
        if !names.is_empty() {
            let _ = writeln!(out, "{kw} {}", names.join(" "));
        }
    }
    for (i, s) in pres.sigma.iter().enumerate() {
        for (j, img) in s.images().iter().enumerate() {
            if *img != spbw_core::CoeffPoly::var(j) {
                let _ = writeln!(out, "sigma {} {} = {}", sym.gens[i], sym.coeffs[j], img.render(sym));
            }
        }
    }
    for (i, d) in pres.delta.iter().enumerate() {
        for (j, img) in d.images().iter().enumerate() {
            if !img.is_zero() {
                let _ = writeln!(out, "delta {} {} = {}", sym.gens[i], sym.coeffs[j], img.render(sym));
            }
        }
    }
    for (&(j, i), rel) in pres.stored_relations() {
        let _ = writeln!(out, "rel {} {} = {}", sym.gens[j], sym.gens[i], alg.render(&rel.rhs(j, i)));
    }
    if let Some(c) = &doc.calculus {
        let _ = writeln!(out, "calculus {}", c.mode);
        if c.mode == Mode::Flat {
            if c.explicit_dgens {
                for (name, form) in c.names.iter().zip(&c.forms) {
                    let mut f = spbw_core::SkewPoly::zero();
                    for (k, s) in form.iter().enumerate() {
                        f = &f + &alg.coord(k).scale(s);
                    }
                    let _ = writeln!(out, "dgen {name} = {}", alg.render(&f));
                }
            }
            for (k, name) in c.names.iter().enumerate() {
                write_map(&mut out, doc, "twist", name, &c.twists[k]);
                if let Some(inv) = &c.inverses[k] {
                    write_map(&mut out, doc, "inverse", name, inv);
                }
            }
            for (&(i, j), l) in &c.wedges {
                let _ = writeln!(out, "wedge {} {} = {}", c.names[i], c.names[j], l.render(&sym.params));
            }
        }
    }
    if doc.options != Options::default() {
        out.push_str("options\n");
        let default = Options::default().entries();
        for ((key, v), (_, d)) in doc.options.entries().iter().zip(default) {
            if *v != d {
                let _ = writeln!(out, "{key} {v}");
            }
        }
    }
    out
}

fn write_map(out: &mut String, doc: &PresentationDoc, kw: &str, name: &str, imgs: &[spbw_core::SkewPoly]) {
    let alg = &doc.algebra;
    let parts: Vec<String> = imgs
        .iter()
        .enumerate()
        .filter(|(c, img)| **img != alg.coord(*c))
        .map(|(c, img)| format!("{} -> {}", alg.coord_name(c), alg.render(img)))
        .collect();
    if !parts.is_empty() || kw == "inverse" {
        let _ = writeln!(out, "{kw} {name}: {}", parts.join(", "));
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_presentation;
    use super::*;

    #[test]
    fn round_trip() {
        let text = "name aq\nparams s\ncoeffs x y\ngens z\nsigma z x = y\nsigma z y = x/s^2\n\
                    calculus flat\ndgen du = x + s*y\ndgen dv = x - s*y\ndgen dz = z\n\
                    twist du: z -> z/s\ntwist dv: z -> -z/s\ntwist dz: x -> s^2*y, y -> x\n\
                    wedge dz du = s\nwedge dv dz = -1/s\noptions\nsamples 10\n";
        let d = parse_presentation(text).unwrap();
        let r = render_presentation(&d);
        assert_eq!(parse_presentation(&r).unwrap(), d, "{r}");
        assert_eq!(render_presentation(&parse_presentation(&r).unwrap()), r);
    }
}
