//! The local integral expressions of the twisting map and its upper-triangular
//! rewriting, in the `J'` realization.
//!
//! Every expression is a [`LocalTerm`]; identities are lists of terms on each
//! side, compared as formal sums of cosets `g K`.

use crate::cosets::{PAdicCtx, PEntry, ResidueMat, Zp};
use crate::exact::Realization;

use super::local::{eta_tau, var, x_jp, y_jp, Body, Domain, Ent, LocalTerm, Var};

fn term(
    ctx: &PAdicCtx,
    label: &str,
    q_exp: i32,
    chi_minus_one: bool,
    (eta_pow, tau_pow): (i32, i32),
    vars: Vec<Var>,
    body: Body,
) -> LocalTerm {
    LocalTerm {
        label: label.to_string(),
        realization: Realization::JPrime,
        q_exp,
        chi_minus_one,
        prefix: eta_tau(ctx, Realization::JPrime, eta_pow, tau_pow),
        suffix: None,
        vars,
        body,
        fixed_depths: None,
    }
}

fn xy(c: &PAdicCtx, s: PEntry, y: [PEntry; 4]) -> ResidueMat {
    x_jp(c, s).mul(&y_jp(c, y[0], y[1], y[2], y[3]))
}

fn yy(c: &PAdicCtx, y: [PEntry; 4]) -> ResidueMat {
    y_jp(c, y[0], y[1], y[2], y[3])
}

use Domain::{Ideal, Int, Unit, UnitNotMinusOne, UnitNotOne};

/// Lower unipotent `[[1,0,0,0],[0,1,0,0],[0,x,1,0],[0,0,0,1]]`.
fn lower(c: &PAdicCtx, x: Zp) -> ResidueMat {
    let e = Ent(c);
    let (o, z) = (e.one(), e.zero());
    c.mat(
        [
            [o, z, z, z],
            [z, o, z, z],
            [z, e.v(x, 0), o, z],
            [z, z, z, o],
        ],
        0,
    )
}

/// The Weyl element `[[1,0,0,0],[0,0,1,0],[0,-1,0,0],[0,0,0,1]]`.
fn weyl_s(c: &PAdicCtx) -> ResidueMat {
    let e = Ent(c);
    let (o, z) = (e.one(), e.zero());
    c.mat(
        [
            [o, z, z, z],
            [z, z, o, z],
            [z, e.i(-1, 0), z, z],
            [z, z, z, o],
        ],
        0,
    )
}

fn t4(c: &PAdicCtx) -> ResidueMat {
    let e = Ent(c);
    let (o, z) = (e.one(), e.zero());
    c.mat(
        [
            [z, z, z, e.i(-1, -4)],
            [z, o, z, z],
            [z, z, o, z],
            [e.i(1, 4), z, z, z],
        ],
        0,
    )
}

/// `[[1, -a/p, b/p^2, z/p^zexp], [0,1,0,b/p^2], [0,0,1,a/p], [0,0,0,1]]`.
fn heis(c: &PAdicCtx, a: Zp, b: Zp, z: Zp, zexp: i32) -> ResidueMat {
    let e = Ent(c);
    let (o, zero) = (e.one(), e.zero());
    c.mat(
        [
            [o, e.v(-a, -1), e.v(b, -2), e.v(z, -zexp)],
            [zero, o, zero, e.v(b, -2)],
            [zero, zero, o, e.v(a, -1)],
            [zero, zero, zero, o],
        ],
        0,
    )
}

/// The four integrals defining the twisting map, labelled `P1`..`P4`.
pub fn defining_terms(ctx: &PAdicCtx) -> Vec<LocalTerm> {
    let tau = eta_tau(ctx, Realization::JPrime, 0, 1);
    let mut out = Vec::new();
    for k in 1..=4 {
        let first = k % 2 == 1;
        let with_t4 = k >= 3;
        let zexp = if with_t4 { 3 } else { 4 };
        let body: Body = Box::new(move |c, v| {
            let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
            let mut g = lower(c, x).mul(&heis(c, a, b, z, zexp));
            if !first {
                g = weyl_s(c).mul(&g);
            }
            if with_t4 {
                g = t4(c).mul(&g);
            }
            (a * b, g)
        });
        let mut t = term(
            ctx,
            &format!("P{k}"),
            if with_t4 { 2 } else { 3 },
            false,
            (0, 0),
            vec![
                var("a", Unit),
                var("b", Unit),
                var(
                    if first { "x" } else { "y" },
                    if first { Int } else { Ideal },
                ),
                var("z", Int),
            ],
            body,
        );
        t.suffix = Some(tau);
        out.push(t);
    }
    out
}

/// The fourteen upper-triangular terms `T1`..`T14`.
pub fn final_terms(ctx: &PAdicCtx) -> Vec<LocalTerm> {
    (1..=14).map(|i| final_term(ctx, i)).collect()
}

/// The `i`-th upper-triangular term.
pub fn final_term(ctx: &PAdicCtx, i: usize) -> LocalTerm {
    let l = format!("T{i}");
    match i {
        1 => term(
            ctx,
            &l,
            2,
            false,
            (0, 0),
            vec![
                var("a", Unit),
                var("b", Unit),
                var("x", Unit),
                var("z", Int),
            ],
            Box::new(|c, v| {
                let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let s = a + x * b;
                (
                    a * b,
                    xy(
                        c,
                        e.v(-s, -1),
                        [e.v(b, -2), e.v(z, -4), e.v(x.inv(), -1), e.v(b, -2)],
                    ),
                )
            }),
        ),
        2 => term(
            ctx,
            &l,
            1,
            false,
            (1, 0),
            vec![
                var("x", UnitNotOne),
                var("a", Unit),
                var("b", Unit),
                var("y", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (x, a, b, y) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                let y14 = a * b * (one - (one - y).inv() * x);
                let y23 = a * b.inv() * (one - x).inv();
                (
                    a * b * x * y,
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(-a, -2), e.v(y14, -3), e.v(y23, -1), e.v(-a, -2)],
                    ),
                )
            }),
        ),
        3 => term(
            ctx,
            &l,
            0,
            false,
            (1, 0),
            vec![var("a", Unit), var("b", Unit), var("z", UnitNotOne)],
            Box::new(|c, v| {
                let (a, b, z) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    b * (c.z(1) - z),
                    yy(
                        c,
                        [
                            e.v(a, -2),
                            e.v(b, -3),
                            e.v(a * a * b.inv() * z, -1),
                            e.v(a, -2),
                        ],
                    ),
                )
            }),
        ),
        4 => term(
            ctx,
            &l,
            1,
            false,
            (1, 0),
            vec![var("a", Int), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                let y14 = b * c.z(c.p as i128) - a * x;
                (
                    b,
                    xy(
                        c,
                        e.v(x, -2),
                        [e.v(a, -2), e.v(y14, -4), e.zero(), e.v(a, -2)],
                    ),
                )
            }),
        ),
        5 => term(
            ctx,
            &l,
            0,
            false,
            (1, 0),
            vec![var("a", Unit), var("b", Unit), var("x", Int)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    b,
                    xy(
                        c,
                        e.v(x, -1),
                        [e.v(a, -2), e.v(b - a * x, -3), e.zero(), e.v(a, -2)],
                    ),
                )
            }),
        ),
        6 => term(
            ctx,
            &l,
            -1,
            false,
            (2, 0),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                let y14 = b * (c.z(1) - x * c.z(c.p as i128));
                (
                    b * x,
                    yy(
                        c,
                        [
                            e.v(a, -2),
                            e.v(y14, -2),
                            e.v(a * a * b.inv(), -2),
                            e.v(a, -2),
                        ],
                    ),
                )
            }),
        ),
        7 => term(
            ctx,
            &l,
            1,
            false,
            (0, 1),
            vec![var("a", Unit), var("b", Unit), var("z", Int)],
            Box::new(|c, v| {
                let (a, b, z) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    a * b,
                    xy(
                        c,
                        e.v(-a, -2),
                        [e.v(b, -1), e.v(z, -4), e.zero(), e.v(b, -1)],
                    ),
                )
            }),
        ),
        8 => term(
            ctx,
            &l,
            0,
            false,
            (1, 1),
            vec![var("a", Unit), var("b", Unit), var("z", UnitNotOne)],
            Box::new(|c, v| {
                let (a, b, z) = (v[0], v[1], v[2]);
                let e = Ent(c);
                let one = c.z(1);
                (
                    a * b * z * (one - z),
                    xy(
                        c,
                        e.v(b, -2),
                        [
                            e.v(a, -1),
                            e.v(-(a * b * (one - z)), -3),
                            e.zero(),
                            e.v(a, -1),
                        ],
                    ),
                )
            }),
        ),
        9 => term(
            ctx,
            &l,
            -2,
            false,
            (2, 1),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    b,
                    xy(c, e.v(a, -1), [e.zero(), e.v(-b, -1), e.v(x, -1), e.zero()]),
                )
            }),
        ),
        10 => term(
            ctx,
            &l,
            -3,
            false,
            (2, 2),
            vec![var("a", Unit), var("b", Unit)],
            Box::new(|c, v| {
                let (a, b) = (v[0], v[1]);
                let e = Ent(c);
                (
                    b,
                    xy(c, e.v(a, -2), [e.zero(), e.v(-b, -1), e.zero(), e.zero()]),
                )
            }),
        ),
        11 => term(
            ctx,
            &l,
            3,
            false,
            (0, -1),
            vec![var("a", Unit), var("b", Unit), var("x", Int), var("z", Int)],
            Box::new(|c, v| {
                let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let s = x * b + a * c.z(c.p as i128);
                (
                    a * b,
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(s, -3), e.v(z, -4), e.v(-x, -2), e.v(s, -3)],
                    ),
                )
            }),
        ),
        12 => term(
            ctx,
            &l,
            2,
            false,
            (1, -1),
            vec![
                var("a", Unit),
                var("b", Unit),
                var("y", Int),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (a, b, y, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                let pw = c.z(c.p as i128);
                let y14 = a * (b * (one - z) * pw - y);
                let y23 = -(a.inv() * (y + b * pw));
                (
                    a * b * z * (one - z),
                    xy(
                        c,
                        e.v(a, -1),
                        [e.v(y, -3), e.v(y14, -4), e.v(y23, -2), e.v(y, -3)],
                    ),
                )
            }),
        ),
        13 => term(
            ctx,
            &l,
            0,
            false,
            (2, -1),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    b * x,
                    yy(
                        c,
                        [
                            e.v(a, -2),
                            e.v(b * (c.z(1) - x), -1),
                            e.v(a * a * b.inv(), -3),
                            e.v(a, -2),
                        ],
                    ),
                )
            }),
        ),
        14 => term(
            ctx,
            &l,
            1,
            false,
            (2, -2),
            vec![var("a", Unit), var("b", Unit), var("x", Int)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (b, yy(c, [e.v(a, -2), e.v(-b, -1), e.v(x, -4), e.v(a, -2)]))
            }),
        ),
        _ => panic!("no term T{i}"),
    }
}

/// Terms appearing only in intermediate steps of the rewriting.
pub fn intermediate_term(ctx: &PAdicCtx, name: &str) -> LocalTerm {
    let l = name;
    match name {
        // q^3 tau^{-1}, from the first defining integral
        "R1b" => term(
            ctx,
            l,
            3,
            false,
            (0, -1),
            vec![
                var("a", Unit),
                var("b", Unit),
                var("x", Unit),
                var("z", Int),
            ],
            Box::new(|c, v| {
                let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let s = -((b - x * a * c.z(c.p as i128)) * x);
                (
                    a * b,
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(s, -3), e.v(z, -4), e.v(x, -2), e.v(s, -3)],
                    ),
                )
            }),
        ),
        // q^2 tau^{-1}, from the second defining integral
        "R2" => term(
            ctx,
            l,
            2,
            false,
            (0, -1),
            vec![var("a", Unit), var("b", Unit), var("y", Int), var("z", Int)],
            Box::new(|c, v| {
                let (a, b, y, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let s = a + b * y;
                (
                    a * b,
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(s, -2), e.v(z, -4), e.v(-y, -1), e.v(s, -2)],
                    ),
                )
            }),
        ),
        // third defining integral, nine pieces
        "R3a" => term(
            ctx,
            l,
            2,
            true,
            (1, -1),
            vec![
                var("x", Unit),
                var("a", Unit),
                var("b", Unit),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (x, a, b, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                let pw = c.z(c.p as i128);
                let y14 = -(a * b * (one + x * pw));
                let y23 = -(a * b.inv() * (one + x * z.inv() * pw).inv());
                (
                    a * b * x * (one - z),
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(a, -3), e.v(y14, -4), e.v(y23, -2), e.v(a, -3)],
                    ),
                )
            }),
        ),
        "R3b" => term(
            ctx,
            l,
            0,
            false,
            (1, 1),
            vec![
                var("x", Int),
                var("a", Unit),
                var("b", Unit),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (a, b, z) = (v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                (
                    a * b * z * (one - z),
                    xy(
                        c,
                        e.v(b, -2),
                        [
                            e.v(a, -1),
                            e.v(-(a * b * (one - z)), -3),
                            e.zero(),
                            e.v(a, -1),
                        ],
                    ),
                )
            }),
        ),
        "R3d" => term(
            ctx,
            l,
            0,
            true,
            (1, 0),
            vec![
                var("x", Int),
                var("a", Unit),
                var("b", Unit),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (a, b, z) = (v[1], v[2], v[3]);
                let e = Ent(c);
                (
                    b * (c.z(1) - z),
                    yy(
                        c,
                        [
                            e.v(a, -2),
                            e.v(-b, -3),
                            e.v(-(a * a * b.inv() * z), -1),
                            e.v(a, -2),
                        ],
                    ),
                )
            }),
        ),
        "R3e" => term(
            ctx,
            l,
            1,
            true,
            (2, -2),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (b, yy(c, [e.v(a, -2), e.v(b, -1), e.v(x, -4), e.v(a, -2)]))
            }),
        ),
        "R3f" => term(
            ctx,
            l,
            -1,
            true,
            (2, 0),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                let y14 = b * (c.z(1) + x * c.z(c.p as i128));
                (
                    b * x,
                    yy(
                        c,
                        [
                            e.v(a, -2),
                            e.v(y14, -2),
                            e.v(a * a * b.inv(), -2),
                            e.v(a, -2),
                        ],
                    ),
                )
            }),
        ),
        "R3g" => term(
            ctx,
            l,
            -2,
            true,
            (2, 1),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    b,
                    xy(c, e.v(a, -1), [e.zero(), e.v(b, -1), e.v(x, -1), e.zero()]),
                )
            }),
        ),
        "R3h" => term(
            ctx,
            l,
            -3,
            true,
            (2, 2),
            vec![var("a", Unit), var("b", Unit)],
            Box::new(|c, v| {
                let (a, b) = (v[0], v[1]);
                let e = Ent(c);
                (
                    b,
                    xy(c, e.v(a, -2), [e.zero(), e.v(b, -1), e.zero(), e.zero()]),
                )
            }),
        ),
        "R3i" => term(
            ctx,
            l,
            1,
            false,
            (1, 0),
            vec![var("a", Unit), var("b", Unit), var("x", Int)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                let y14 = b * c.z(c.p as i128) - a * x;
                (
                    b,
                    xy(
                        c,
                        e.v(x, -2),
                        [e.v(a, -2), e.v(y14, -4), e.zero(), e.v(a, -2)],
                    ),
                )
            }),
        ),
        // fourth defining integral, three pieces
        "R4a" => term(
            ctx,
            l,
            0,
            false,
            (1, 0),
            vec![var("a", Unit), var("b", Unit), var("y", Int)],
            Box::new(|c, v| {
                let (a, b, y) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    a * b,
                    xy(
                        c,
                        e.v(-a, -2),
                        [e.v(y, -1), e.v(a * (y + b), -3), e.zero(), e.v(y, -1)],
                    ),
                )
            }),
        ),
        "R4b" => term(
            ctx,
            l,
            1,
            false,
            (1, -1),
            vec![
                var("a", Unit),
                var("b", Unit),
                var("y", Int),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (a, b, y, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                let y23 = a.inv() * (y + b * z * (z - one).inv());
                (
                    a * b,
                    xy(
                        c,
                        e.v(-a, -1),
                        [
                            e.v(y, -2),
                            e.v(a * (y + b * z), -3),
                            e.v(y23, -1),
                            e.v(y, -2),
                        ],
                    ),
                )
            }),
        ),
        "R4c" => term(
            ctx,
            l,
            0,
            false,
            (2, -2),
            vec![var("a", Unit), var("b", Unit), var("y", Int)],
            Box::new(|c, v| {
                let (a, b, y) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (a, yy(c, [e.v(b, -2), e.v(-a, -1), e.v(y, -3), e.v(b, -2)]))
            }),
        ),
        // the eta^2 tau^{-2} merge: middle form
        "M14" => term(
            ctx,
            l,
            1,
            true,
            (2, -2),
            vec![var("a", Unit), var("b", Unit), var("y", Ideal)],
            Box::new(|c, v| {
                let (a, b, y) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (a, yy(c, [e.v(b, -2), e.v(a, -1), e.v(y, -4), e.v(b, -2)]))
            }),
        ),
        // merged eta^2 tau^{-2} term, before removing chi(-1)
        "S14" => term(
            ctx,
            l,
            1,
            true,
            (2, -2),
            vec![var("a", Unit), var("b", Unit), var("x", Int)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (b, yy(c, [e.v(a, -2), e.v(b, -1), e.v(x, -4), e.v(a, -2)]))
            }),
        ),
        // the eta tau^{-1} piece as displayed in the combination step
        "R3a'" => term(
            ctx,
            l,
            2,
            true,
            (1, -1),
            vec![
                var("x", Unit),
                var("a", Unit),
                var("b", Unit),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (x, a, b, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let pw = c.z(c.p as i128);
                let y14 = b * (x - z * a * pw);
                let y23 = b.inv() * (x + a * pw);
                (
                    b * a * (c.z(1) - z) * z,
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(-x, -3), e.v(y14, -4), e.v(y23, -2), e.v(-x, -3)],
                    ),
                )
            }),
        ),
        // merged eta tau^{-1} term, before removing chi(-1)
        "S12" => term(
            ctx,
            l,
            2,
            true,
            (1, -1),
            vec![
                var("a", Unit),
                var("b", Unit),
                var("y", Int),
                var("z", UnitNotOne),
            ],
            Box::new(|c, v| {
                let (a, b, y, z) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                let pw = c.z(c.p as i128);
                let y14 = -(a * (y + b * (one - z) * pw));
                let y23 = a.inv() * (-y + b * pw);
                (
                    a * b * z * (one - z),
                    xy(
                        c,
                        e.v(a, -1),
                        [e.v(y, -3), e.v(y14, -4), e.v(y23, -2), e.v(y, -3)],
                    ),
                )
            }),
        ),
        // the remaining chi(-1) terms
        "S13" => term(
            ctx,
            l,
            0,
            true,
            (2, -1),
            vec![var("a", Unit), var("b", Unit), var("x", Unit)],
            Box::new(|c, v| {
                let (a, b, x) = (v[0], v[1], v[2]);
                let e = Ent(c);
                (
                    b * x,
                    yy(
                        c,
                        [
                            e.v(a, -2),
                            e.v(b * (x - c.z(1)), -1),
                            e.v(-(a * a * b.inv()), -3),
                            e.v(a, -2),
                        ],
                    ),
                )
            }),
        ),
        // the A(z) term after reparametrization, successive forms W1..W5
        "W1" | "W2" | "W3" | "W4" => {
            let form = name.to_string();
            term(
                ctx,
                l,
                1,
                true,
                (1, 0),
                vec![
                    var("w", UnitNotOne),
                    var("a", Unit),
                    var("b", Unit),
                    var("z", UnitNotOne),
                ],
                Box::new(move |c, v| {
                    let (w, a, b, z) = (v[0], v[1], v[2], v[3]);
                    let e = Ent(c);
                    let one = c.z(1);
                    let (arg, y14, y23) = match form.as_str() {
                        "W1" => (
                            a * b * z * (one - z) * w * (one - w),
                            a * b * (one + z * w.inv() * (one - w)),
                            a * b.inv() * w,
                        ),
                        "W2" => (
                            a * z.inv() * (one - z) * b * w.inv() * (one - w),
                            a * b * (one + z * w.inv() * (one - w)),
                            a * b.inv() * w,
                        ),
                        "W3" => (
                            a * (z.inv() - one) * b * (w.inv() - one),
                            a * b * (one + z * (w.inv() - one)),
                            a * b.inv() * w,
                        ),
                        _ => (
                            a * (z - one) * b * (w - one),
                            a * b * (one + z.inv() * (w - one)),
                            a * b.inv() * w.inv(),
                        ),
                    };
                    (
                        arg,
                        xy(
                            c,
                            e.v(b, -1),
                            [e.v(a, -2), e.v(-y14, -3), e.v(-y23, -1), e.v(a, -2)],
                        ),
                    )
                }),
            )
        }
        "W5" => term(
            ctx,
            l,
            1,
            true,
            (1, 0),
            vec![
                var("x", UnitNotMinusOne),
                var("a", Unit),
                var("b", Unit),
                var("y", UnitNotMinusOne),
            ],
            Box::new(|c, v| {
                let (x, a, b, y) = (v[0], v[1], v[2], v[3]);
                let e = Ent(c);
                let one = c.z(1);
                let y14 = -(a * b * (one + (one + y).inv() * x));
                let y23 = -(a * b.inv() * (one + x).inv());
                (
                    a * y * b * x,
                    xy(
                        c,
                        e.v(b, -1),
                        [e.v(a, -2), e.v(y14, -3), e.v(y23, -1), e.v(a, -2)],
                    ),
                )
            }),
        ),
        _ => panic!("unknown intermediate term {name}"),
    }
}

/// The A(z)-dependent piece of the third defining integral, in the form given
/// by the rewriting of that integral (`sign = +1`) or by the combined display
/// (`sign = -1`). `excluded(z, x)` decides membership of `x` in `A(z)`.
pub fn az_term(
    ctx: &PAdicCtx,
    sign: i64,
    excluded: impl Fn(Zp, Zp) -> bool + Send + Sync + 'static,
) -> LocalTerm {
    term(
        ctx,
        if sign > 0 { "R3c" } else { "R3c'" },
        1,
        true,
        (1, 0),
        vec![
            var(
                "x",
                Domain::UnitExcluding(Box::new(move |v: &[Zp]| excluded(v[3], v[0]))),
            ),
            var("a", Unit),
            var("b", Unit),
            var("z", UnitNotOne),
        ],
        Box::new(move |c, v| {
            let (x, a, b, z) = (v[0], v[1], v[2], v[3]);
            let e = Ent(c);
            let one = c.z(1);
            let y14 = a * b * x.inv() * (one + x - z) * c.z(sign as i128);
            let y23 = -(a * b.inv() * x * z * (one - z + z * x).inv());
            (
                a * b * x,
                xy(
                    c,
                    e.v(b, -1),
                    [e.v(a, -2), e.v(y14, -3), e.v(y23, -1), e.v(a, -2)],
                ),
            )
        }),
    )
}

/// The exceptional set obtained from the substitution `x = (z^{-1}-1)(w^{-1}-1)^{-1}`:
/// its image misses exactly the units congruent to `1 - z^{-1}`.
pub fn reparametrization_complement(p: u64) -> impl Fn(Zp, Zp) -> bool + Send + Sync + Clone {
    move |z: Zp, x: Zp| {
        if z.value().is_multiple_of(p) {
            return true;
        }
        let target = (Zp::new(1, z.modulus()) - z.inv()).value() % p;
        x.value() % p == target
    }
}

/// A named identity `lhs = rhs` between sums of local terms.
pub struct Identity {
    pub name: String,
    pub lhs: Vec<LocalTerm>,
    pub rhs: Vec<LocalTerm>,
}

/// Names of the identities that do not involve the set `A(z)`.
pub const IDENTITY_NAMES: &[&str] = &[
    "full",
    "lemma-p1",
    "lemma-p2",
    "lemma-p4",
    "display-eta-tau-1",
    "merge-eta2-tau-2",
    "merge-eta2-tau-2-middle",
    "merge-eta-tau-1",
    "merge-tau-1",
    "merge-eta",
    "reparam-w1-w2",
    "reparam-w2-w3",
    "reparam-w3-w4",
    "reparam-w4-w5",
    "chi-elim-2",
    "chi-elim-3",
    "chi-elim-6",
    "chi-elim-9",
    "chi-elim-10",
    "chi-elim-12",
    "chi-elim-13",
    "chi-elim-14",
];

/// Build one of the identities listed in [`IDENTITY_NAMES`].
pub fn identity(ctx: &PAdicCtx, name: &str) -> Option<Identity> {
    let t = |i| final_term(ctx, i);
    let m = |n: &str| intermediate_term(ctx, n);
    let p = |k: usize| defining_terms(ctx).into_iter().nth(k - 1).expect("P1..P4");
    let (lhs, rhs) = match name {
        "full" => (defining_terms(ctx), final_terms(ctx)),
        "lemma-p1" => (vec![p(1)], vec![t(7), m("R1b"), t(1)]),
        "lemma-p2" => (vec![p(2)], vec![m("R2")]),
        "lemma-p4" => (vec![p(4)], vec![m("R4a"), m("R4b"), m("R4c")]),
        "display-eta-tau-1" => (vec![m("R3a")], vec![m("R3a'")]),
        "merge-eta2-tau-2" => (vec![m("R3e"), m("R4c")], vec![m("S14")]),
        "merge-eta2-tau-2-middle" => (vec![m("R4c")], vec![m("M14")]),
        "merge-eta-tau-1" => (vec![m("R4b"), m("R3a'")], vec![m("S12")]),
        "merge-tau-1" => (vec![m("R1b"), m("R2")], vec![t(11)]),
        "merge-eta" => (vec![m("R3i"), m("R4a")], vec![t(4), t(5)]),
        "reparam-w1-w2" => (vec![m("W1")], vec![m("W2")]),
        "reparam-w2-w3" => (vec![m("W2")], vec![m("W3")]),
        "reparam-w3-w4" => (vec![m("W3")], vec![m("W4")]),
        "reparam-w4-w5" => (vec![m("W4")], vec![m("W5")]),
        "chi-elim-2" => (vec![m("W5")], vec![t(2)]),
        "chi-elim-3" => (vec![m("R3d")], vec![t(3)]),
        "chi-elim-6" => (vec![m("R3f")], vec![t(6)]),
        "chi-elim-9" => (vec![m("R3g")], vec![t(9)]),
        "chi-elim-10" => (vec![m("R3h")], vec![t(10)]),
        "chi-elim-12" => (vec![m("S12")], vec![t(12)]),
        "chi-elim-13" => (vec![m("S13")], vec![t(13)]),
        "chi-elim-14" => (vec![m("S14")], vec![t(14)]),
        _ => return None,
    };
    Some(Identity {
        name: name.to_string(),
        lhs,
        rhs,
    })
}

/// The rewriting of the third defining integral, which needs the set `A(z)`.
///
/// With `with_eta2_tau_inv` the right side also carries the
/// `chi(-1) eta^2 tau^{-1}` integral; without it the identity does not hold.
pub fn lemma_p3(
    ctx: &PAdicCtx,
    excluded: impl Fn(Zp, Zp) -> bool + Send + Sync + 'static,
    with_eta2_tau_inv: bool,
) -> Identity {
    let m = |n: &str| intermediate_term(ctx, n);
    let p3 = defining_terms(ctx).into_iter().nth(2).expect("P3");
    let mut rhs = vec![
        m("R3a"),
        m("R3b"),
        az_term(ctx, 1, excluded),
        m("R3d"),
        m("R3e"),
        m("R3f"),
        m("R3g"),
        m("R3h"),
        m("R3i"),
    ];
    if with_eta2_tau_inv {
        rhs.push(m("S13"));
    }
    Identity {
        name: "lemma-p3".into(),
        lhs: vec![p3],
        rhs,
    }
}

/// The `A(z)` integral against its reparametrized form `W1`.
pub fn az_reparametrization(
    ctx: &PAdicCtx,
    excluded: impl Fn(Zp, Zp) -> bool + Send + Sync + 'static,
    sign: i64,
) -> Identity {
    Identity {
        name: "az-reparametrization".into(),
        lhs: vec![az_term(ctx, sign, excluded)],
        rhs: vec![intermediate_term(ctx, "W1")],
    }
}
