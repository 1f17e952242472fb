//! Reference reproductions bundled with the binary (`paper-suite`).

use tropcomm::commutant::{commutes, find_unit_commuter, omega_w_dim_bound, witness_winners};
use tropcomm::fixtures as fx;
use tropcomm::perturb::{check_pq_theorem, make_p, PerturbationSpec};
use tropcomm::polytope::{bars_check, compute_overline, compute_underline, polytope_dim, upper_set_system, Relabeling};
use tropcomm::section::{convex_hull, section_complex, sector_check, Point};
use tropcomm::{span_contains, Matrix, Rat, Result};

pub struct Row {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

fn r(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

fn rs(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| r(x)).collect()
}

fn strict4_product() -> Result<bool> {
    let (a, b) = (fx::strict4_a(), fx::strict4_b());
    Ok(a.mat_mul(&b)? == fx::strict4_product() && b.mat_mul(&a)? == fx::strict4_product())
}

fn strict4_winner() -> Result<bool> {
    let set = witness_winners(&fx::strict4_a(), &fx::strict4_b())?;
    Ok(set.is_some_and(|s| s.contains(&fx::strict4_winner())))
}

fn strict4_sum() -> Result<bool> {
    let sum = fx::strict4_a().mat_add(&fx::strict4_b())?;
    Ok(sum == fx::strict4_sum() && !sum.is_idempotent())
}

fn border3_h() -> Result<bool> {
    let sys = upper_set_system(&fx::border3(), &Relabeling::row_major(3))?;
    Ok(*sys.matrix() == fx::border3_upper_h())
}

fn border3_hstar() -> Result<bool> {
    let h = fx::border3_upper_h();
    let star = fx::border3_upper_h_star();
    Ok(h.mat_pow(3)? == star && h.mat_pow(4)? == star && h.kleene_star()? == star)
}

fn border3_dim() -> Result<bool> {
    let sys = upper_set_system(&fx::border3(), &Relabeling::row_major(3))?;
    Ok(polytope_dim(&sys)? == 5)
}

fn bars_gap() -> Result<bool> {
    let (b, x) = (fx::border3(), fx::bars_gap_x());
    let between = fx::border3_underline().mat_le(&x)? && x.mat_le(&fx::border3_overline())?;
    Ok(between && x.mat_mul(&b)? == fx::bars_gap_xb() && b.mat_mul(&x)? == fx::border3_overline())
}

fn star_gap() -> Result<bool> {
    let (b, x) = (fx::border3(), fx::star_gap_x());
    let between = b.kleene_star()?.mat_le(&x)? && x.mat_le(&Matrix::zero(3))?;
    Ok(between && b.mat_mul(&x)? == fx::star_gap_bx() && x.mat_mul(&b)? == x)
}

fn band_product() -> Result<bool> {
    let (a, b) = fx::band_pair();
    let p = rs(&[4, 3, 5]);
    let built = make_p(&p, &r(2))? == a && make_p(&p, &r(1))? == b;
    let expected = make_p(&rs(&[3, 3, 3]), &r(1))?;
    Ok(built && expected == fx::band_product() && a.mat_mul(&b)? == expected && b.mat_mul(&a)? == expected)
}

fn band_theorem() -> Result<bool> {
    let spec = PerturbationSpec::new(rs(&[4, 3, 5]), r(2), r(1))?;
    Ok(check_pq_theorem(&spec)?.p_clause.passed())
}

fn band_a0() -> Result<bool> {
    let (a, b) = fx::band_pair();
    let p0 = make_p(&rs(&[4, 3, 5]), &r(0))?;
    let got = [a.normalize_a0()?, p0.normalize_a0()?, b.normalize_a0()?, fx::band_product().normalize_a0()?];
    Ok(got == fx::band_a0_quadruple())
}

fn bars_a0() -> Result<bool> {
    let got = [
        fx::border3_underline().normalize_a0()?,
        fx::border3().normalize_a0()?,
        fx::border3_overline().normalize_a0()?,
    ];
    Ok(got == fx::border3_a0_triple())
}

fn nested_pair() -> Result<bool> {
    let (a, b) = (fx::nested_a(), fx::nested_b());
    let products = a.mat_mul(&b)? == fx::nested_ab() && b.mat_mul(&a)? == fx::nested_ba();
    Ok(products && a.mat_le(&b)? && !b.is_idempotent() && !span_contains(&a, &b)?.contains)
}

fn border3_generators() -> Result<bool> {
    let s = section_complex(&fx::border3())?;
    let expected: Vec<Point<Rat>> = [(5, 1), (-3, 0), (-1, -6)].iter().map(|&(x, y)| Point::new(r(x), r(y))).collect();
    Ok(s.generators == expected)
}

fn border3_hull() -> Result<bool> {
    let hull = section_complex(&fx::border3())?.alcoved_hull();
    let expected = [(-3, -6), (-1, -6), (5, 0), (5, 1), (-2, 1), (-3, 0)];
    Ok(hull.len() == expected.len() && hull.iter().zip(expected).all(|(p, (x, y))| *p == Point::new(r(x), r(y))))
}

fn overline_is_soma() -> Result<bool> {
    let s = section_complex(&fx::border3())?;
    let over = section_complex(&fx::border3_overline())?;
    let Some(soma) = s.cells.iter().find(|c| c.dim == 2) else {
        return Ok(false);
    };
    let pts: Vec<Point<Rat>> = soma.vertices.iter().map(|&v| s.vertices[v].clone()).collect();
    Ok(over.convex_hull() == convex_hull(&pts))
}

pub fn run_all() -> Vec<Row> {
    type Check = fn() -> Result<bool>;
    let checks: [(&'static str, Check); 20] = [
        ("strict4: AB = BA = reference product", strict4_product),
        ("strict4: reference winner is a witness", strict4_winner),
        ("strict4: dimension bound of the winner is 9", || Ok(omega_w_dim_bound(&fx::strict4_winner()) == 9)),
        ("strict4: A = underline(A)", || Ok(compute_underline(&fx::strict4_a())? == fx::strict4_a())),
        ("strict4: A + B is not idempotent", strict4_sum),
        ("border3: underline", || Ok(compute_underline(&fx::border3())? == fx::border3_underline())),
        ("border3: bound matrix H", border3_h),
        ("border3: H^3 = H^4 = H*", border3_hstar),
        ("border3: overline", || Ok(compute_overline(&fx::border3())? == fx::border3_overline())),
        ("border3: B* = overline(B)", || Ok(fx::border3().kleene_star()? == fx::border3_overline())),
        ("border3: polytope dimension 5", border3_dim),
        ("border3: underline <= B <= overline", || bars_check(&fx::border3())),
        ("bars gap: X between the bars does not commute", bars_gap),
        ("star gap: X between B* and 0 does not commute", star_gap),
        ("band pair: products equal P(-(3,3,3),-1)", band_product),
        ("band pair: product identity holds", band_theorem),
        ("band pair: A0 normal forms", band_a0),
        ("bars: A0 normal forms", bars_a0),
        ("nested pair: AB != BA and span(A) does not contain span(B)", nested_pair),
        ("border3: section generators (5,1), (-3,0), (-1,-6)", border3_generators),
    ];
    let mut rows: Vec<Row> = checks
        .iter()
        .map(|(name, f)| match f() {
            Ok(passed) => Row { name, passed, detail: None },
            Err(e) => Row { name, passed: false, detail: Some(e.to_string()) },
        })
        .collect();
    let extra: [(&'static str, Check); 5] = [
        ("nested pair: commutes reports false", || Ok(!commutes(&fx::nested_a(), &fx::nested_b())?.commutes)),
        ("border3: A0 columns in their sectors", || sector_check(&fx::border3())),
        ("strict4: a unit perturbation commutes", || find_unit_commuter(&fx::strict4_a()).map(|_| true)),
        ("border3: hexagonal hull of the section", border3_hull),
        ("border3: overline section is the 2-cell of the section", overline_is_soma),
    ];
    rows.extend(extra.iter().map(|(name, f)| match f() {
        Ok(passed) => Row { name, passed, detail: None },
        Err(e) => Row { name, passed: false, detail: Some(e.to_string()) },
    }));
    rows
}
