//! Aligned text rendering of reports.

use comfy_table::presets::ASCII_MARKDOWN;
use comfy_table::Table;

use crate::report::Report;

fn table(header: &[&str]) -> Table {
    let mut t = Table::new();
    t.load_preset(ASCII_MARKDOWN);
    t.set_header(header.iter().copied());
    t
}

fn list<T: std::fmt::Debug>(v: &[T]) -> String {
    let s = format!("{v:?}");
    s.replace(' ', "")
}

fn matrix(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("; ")
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let p = &r.problem;
    out.push_str(&format!("command: {}\n", r.command));
    let mut t = table(&["problem", "value"]);
    t.add_row(vec!["name".to_string(), p.name.clone()]);
    t.add_row(vec!["N".to_string(), p.n.clone()]);
    t.add_row(vec!["Q".to_string(), p.q.clone()]);
    t.add_row(vec!["Z generators".to_string(), p.central_generators.join(", ")]);
    t.add_row(vec!["Z".to_string(), p.central_structure.clone()]);
    t.add_row(vec!["d = rank of H over C".to_string(), p.degree.to_string()]);
    t.add_row(vec!["Q0".to_string(), list(&p.q0)]);
    t.add_row(vec!["MaxSpec C".to_string(), p.maxspec.clone()]);
    t.add_row(vec!["torsion classes".to_string(), p.torsion_classes.to_string()]);
    out.push_str(&format!("{t}\n"));

    if let Some(c) = &r.cases {
        out.push_str("\ncases\n");
        let mut t = table(&["case", "torsion classes", "d", "blocks", "n", "block count", "stabilizer", "|Stab|"]);
        for row in &c.rows {
            t.add_row(vec![
                row.label.clone(),
                row.torsion_classes.iter().map(|v| list(v)).collect::<Vec<_>>().join(" "),
                row.root_order.to_string(),
                list(&row.blocks),
                row.irrep_dim.to_string(),
                row.block_count.to_string(),
                list(&row.stabilizer_invariants),
                row.stabilizer_order.to_string(),
            ]);
        }
        out.push_str(&format!("{t}\n"));
    }

    if !r.fibers.is_empty() {
        out.push_str("\nfibers\n");
        let mut t = table(&["point", "torsion", "d", "blocks", "n", "block count", "sd", "center", "irrep", "stabilizer"]);
        for f in &r.fibers {
            let irrep = match &f.irrep {
                Some(i) if i.available => format!("{0}x{0}, span {1}", i.dim, i.algebra_dimension),
                Some(_) => "unavailable".into(),
                None => "-".into(),
            };
            let stab = f.stabilizer.as_ref().map_or("-".into(), |s| format!("{} {} ({})", list(&s.invariants), s.order, s.method));
            t.add_row(vec![
                f.point.clone(),
                list(&f.torsion_class),
                f.root_order.to_string(),
                list(&f.blocks),
                f.irrep_dim.to_string(),
                f.block_count.to_string(),
                f.sd.to_string(),
                f.center_dimension.map_or("-".into(), |c| c.to_string()),
                irrep,
                stab,
            ]);
        }
        out.push_str(&format!("{t}\n"));
        if r.fibers.len() == 1 {
            let f = &r.fibers[0];
            out.push_str(&format!("commutator exponents M: {}\n", matrix(&f.exponent_matrix)));
            if let Some(i) = &f.irrep {
                if let Some(note) = &i.note {
                    out.push_str(&format!("{note}\n"));
                }
                for (k, m) in i.generator_matrices.iter().enumerate() {
                    out.push_str(&format!("generator {k}: [{}]\n", matrix(m)));
                }
            }
            if let Some(s) = &f.stabilizer {
                let chars: Vec<String> = s.characters.iter().map(|c| list(c)).collect();
                out.push_str(&format!("stabilizer characters: {}\n", chars.join(" ")));
            }
        }
    }

    if let Some(s) = &r.scan {
        out.push_str(&format!("\ndiscriminant scan (d = {}, k up to {})\n", s.degree, s.max_k));
        let mut t = table(&["point", "torsion", "det of transversal Gram", "nonzero", "product form", "oversized tuples singular"]);
        for row in &s.rows {
            let over: Vec<String> = row.oversized.iter().map(|o| format!("k={}: {}/{}", o.k, if o.all_singular { o.tuples } else { 0 }, o.tuples)).collect();
            t.add_row(vec![
                row.point.clone(),
                list(&row.torsion_class),
                row.determinant.clone(),
                row.nonzero.to_string(),
                row.product_form_agrees.to_string(),
                over.join(", "),
            ]);
        }
        out.push_str(&format!("{t}\n"));
        out.push_str(&format!(
            "verdict: {}\n",
            s.counterexample.clone().unwrap_or_else(|| "consistent at every point".into())
        ));
    }

    if let Some(o) = &r.orbits {
        out.push_str(&format!("\nwinding orbits (A generated by {}, G/A = {})\n", list(&o.commutator_values), o.abelianization));
        if let Some(f) = &o.focus {
            out.push_str(&format!(
                "point {}: torsion {}, counit orbit {}, commutative fiber {}\n",
                f.point,
                list(&f.torsion_class),
                f.counit_orbit,
                f.commutative_fiber
            ));
            out.push_str(&format!("same orbit as: {}\n", if f.same_orbit_as.is_empty() { "-".into() } else { f.same_orbit_as.join(" ") }));
            if let Some(w) = &f.witness_character {
                out.push_str(&format!("character carrying the counit here: {}\n", w.join(", ")));
            }
        }
        let mut t = table(&["orbit of", "torsion", "counit orbit", "basic", "points"]);
        for c in &o.classes {
            t.add_row(vec![
                c.points[0].clone(),
                list(&c.torsion_class),
                c.counit_orbit.to_string(),
                c.basic.to_string(),
                c.points.len().to_string(),
            ]);
        }
        out.push_str(&format!("{t}\n"));
    }

    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
    out.push_str(&format!("\nchecks: {} passed, {} failed\n", r.checks.len() - failed.len(), failed.len()));
    for c in failed {
        out.push_str(&format!("FAILED {}: {}\n", c.name, c.detail));
    }
    out
}
