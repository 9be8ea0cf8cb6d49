//! Scripts that rebuild an instance in another system.

use std::fmt;
use std::str::FromStr;

use reeskit_core::groebner::{AlgebraMap, Guards, Ideal};
use reeskit_core::polyring::{Polynomial, Ring};
use reeskit_core::reescomb::{build_b, build_c, minor_ideal, rees_maps};
use reeskit_core::truncation::{chi_map, fiber_map, fiber_presentation, rees_presentation};
use reeskit_core::verifier::Target;
use reeskit_core::{FieldSpec, Result};

use crate::instance::InstanceFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    Plain,
    M2,
    Singular,
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(Dialect::Plain),
            "m2" => Ok(Dialect::M2),
            "singular" => Ok(Dialect::Singular),
            _ => Err(format!("unsupported dialect `{s}` (plain, m2 or singular)")),
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Plain => "plain",
            Dialect::M2 => "m2",
            Dialect::Singular => "singular",
        })
    }
}

/// `T_2_1_0` becomes `T210`; with an index of 10 or more the parts are joined by `p`.
pub fn cas_name(name: &str) -> String {
    match name.strip_prefix("T_") {
        Some(rest) => {
            let parts: Vec<&str> = rest.split('_').collect();
            let sep = if parts.iter().any(|p| p.len() > 1) { "p" } else { "" };
            format!("T{}", parts.join(sep))
        }
        None => name.to_string(),
    }
}

/// Rewrites every identifier token of `text` through `map`.
pub fn rename_tokens(text: &str, map: &dyn Fn(&str) -> Option<String>) -> String {
    let mut out = String::with_capacity(text.len());
    let mut token = String::new();
    let flush = |token: &mut String, out: &mut String| {
        if !token.is_empty() {
            match map(token) {
                Some(s) => out.push_str(&s),
                None => out.push_str(token),
            }
            token.clear();
        }
    };
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            token.push(ch);
        } else {
            flush(&mut token, &mut out);
            out.push(ch);
        }
    }
    flush(&mut token, &mut out);
    out
}

/// One presentation to reconstruct: `ker(map) == ideal`.
struct Section {
    title: &'static str,
    map: AlgebraMap,
    ideal: Ideal,
}

fn sections(target: &Target, guards: &Guards) -> Result<Vec<Section>> {
    match target {
        Target::Powers(inst) => {
            let (phi, psi) = rees_maps(inst)?;
            Ok(vec![
                Section { title: "Rees algebra", map: phi, ideal: minor_ideal(&build_c(inst)?)? },
                Section { title: "special fiber ring", map: psi, ideal: minor_ideal(&build_b(inst)?)? },
            ])
        }
        Target::Truncation(ti) => Ok(vec![
            Section { title: "Rees algebra", map: chi_map(ti)?, ideal: rees_presentation(ti, guards)? },
            Section { title: "special fiber ring", map: fiber_map(ti)?, ideal: fiber_presentation(ti, guards)? },
        ]),
    }
}

fn names(ring: &Ring) -> Vec<String> {
    ring.variables().iter().map(|v| cas_name(&v.name)).collect()
}

fn cas_poly(p: &Polynomial) -> String {
    rename_tokens(&p.to_string(), &|t| t.starts_with("T_").then(|| cas_name(t)))
}

fn cas_list(ps: &[Polynomial]) -> String {
    ps.iter().map(cas_poly).collect::<Vec<_>>().join(", ")
}

pub fn export(file: &InstanceFile, target: &Target, dialect: Dialect, guards: &Guards) -> Result<String> {
    match dialect {
        Dialect::Plain => plain(file, target, guards),
        Dialect::M2 => m2(target, &sections(target, guards)?),
        Dialect::Singular => singular(target, &sections(target, guards)?),
    }
}

fn plain(file: &InstanceFile, target: &Target, guards: &Guards) -> Result<String> {
    let mut out = format!("# reeskit instance: {}\n", crate::display::target_line(target));
    out += &file.render();
    for s in sections(target, guards)? {
        out += &format!("# {} presentation:\n", s.title);
        for g in s.ideal.gens() {
            out += &format!("#   {}\n", crate::display::display_poly(g));
        }
    }
    Ok(out)
}

fn m2(target: &Target, sections: &[Section]) -> Result<String> {
    let coeffs = match field_of(target) {
        FieldSpec::Rationals => "QQ".to_string(),
        FieldSpec::Prime(p) => format!("ZZ/{p}"),
    };
    let mut out = format!("-- reeskit export: {}\n", crate::display::target_line(target));
    for (k, s) in sections.iter().enumerate() {
        let k = k + 1;
        out += &format!("-- {}\n", s.title);
        // the most recently assigned ring is in use, so generators precede the target
        out += &format!("S{k} = {coeffs}[{}];\n", names(&s.map.source).join(", "));
        out += &format!("I{k} = {};\n", ideal_or_zero(s.ideal.gens(), &format!("ideal(0_S{k})"), "ideal"));
        out += &format!("R{k} = {coeffs}[{}];\n", names(&s.map.target).join(", "));
        out += &format!("f{k} = map(R{k}, S{k}, {{{}}});\n", cas_list(&s.map.images));
        out += &format!("assert(kernel f{k} == I{k});\n");
    }
    Ok(out)
}

fn singular(target: &Target, sections: &[Section]) -> Result<String> {
    let ch = match field_of(target) {
        FieldSpec::Rationals => 0,
        FieldSpec::Prime(p) => p,
    };
    let mut out = format!("// reeskit export: {}\n", crate::display::target_line(target));
    for (k, s) in sections.iter().enumerate() {
        let k = k + 1;
        out += &format!("// {}\n", s.title);
        out += &format!("ring S{k} = {ch}, ({}), dp;\n", names(&s.map.source).join(", "));
        out += &format!("ideal I{k} = {};\n", if s.ideal.gens().is_empty() { "0".into() } else { cas_list(s.ideal.gens()) });
        out += &format!("ring R{k} = {ch}, ({}), dp;\n", names(&s.map.target).join(", "));
        out += &format!("map f{k} = S{k}, {};\n", cas_list(&s.map.images));
        out += &format!("setring S{k};\n");
        out += &format!("ideal K{k} = preimage(R{k}, f{k}, ideal(0));\n");
        out += &format!(
            "if (size(reduce(K{k}, std(I{k}))) != 0 || size(reduce(I{k}, std(K{k}))) != 0) {{ ERROR(\"kernel mismatch in {}\"); }}\n",
            s.title
        );
    }
    Ok(out)
}

fn ideal_or_zero(gens: &[Polynomial], zero: &str, head: &str) -> String {
    if gens.is_empty() {
        zero.to_string()
    } else {
        format!("{head}({})", cas_list(gens))
    }
}

fn field_of(target: &Target) -> FieldSpec {
    match target {
        Target::Powers(i) => i.field(),
        Target::Truncation(t) => t.field(),
    }
}

#[cfg(test)]
/// Kernel of each exported map, for checking an export against the tool itself.
pub fn kernels_match(target: &Target, guards: &Guards) -> Result<bool> {
    for s in sections(target, guards)? {
        let ker = reeskit_core::groebner::kernel_of_map(&s.map, guards)?;
        if !(ker.contains_ideal(&s.ideal, guards)? && s.ideal.contains_ideal(&ker, guards)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
