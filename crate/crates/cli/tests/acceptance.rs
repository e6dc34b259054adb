use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_traits::Zero;

use csrig::constructions::{cross_polytope_boundary, simplex_boundary, swartz_demo};
use csrig::enumerative::{f_vector, g_number, h_polynomial};
use csrig::geometry::{project_orthogonal, realize_script, RationalVector, RealizedPolytope};
use csrig::rigidity::{
    float_rank, is_infinitesimally_rigid, rigidity_matrix, stress_basis, stress_through_edge, symm_stress_bound,
    symmetric_stress_subspace, StressVector,
};
use csrig::verify::{stacked_script, symmetric_script};
use csrig::{
    validate_cs, Embedding, Face, Graph, IntPolynomial, Involution, SimplicialComplex, SubdivisionMap, VertexId,
};

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// h from f by the defining transform, independent of the library's.
fn h_from_f(f: &[i64], d: i64) -> Vec<i64> {
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| (-1i64).pow((k - i) as u32) * binom(d - i, k - i) * f[i as usize])
                .sum()
        })
        .collect()
}

/// f_{-1}, f_0, ... of the complex by brute-force subset closure of its facets.
fn brute_f(c: &SimplicialComplex) -> Vec<i64> {
    let mut faces: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for facet in c.facets() {
        let vs = facet.vertices();
        for mask in 0u32..(1 << vs.len()) {
            faces.insert((0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect());
        }
    }
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    (0..=top)
        .map(|s| faces.iter().filter(|f| f.len() == s).count() as i64)
        .collect()
}

fn g2_oracle(f0: i64, f1: i64, d: i64) -> i64 {
    f1 - d * f0 + binom(d + 1, 2)
}

/// Equilibrium at every vertex, summed directly from coordinates.
fn equilibrium_oracle(s: &StressVector, e: &Embedding) -> bool {
    let mut force: std::collections::BTreeMap<VertexId, RationalVector> = Default::default();
    for (&(u, v), w) in &s.weights {
        let (pu, pv) = (e.get(u).unwrap(), e.get(v).unwrap());
        let diff = (pu - pv).scale(w);
        let zero = RationalVector::zero(e.d());
        let fu = force.get(&u).cloned().unwrap_or_else(|| zero.clone());
        let fv = force.get(&v).cloned().unwrap_or(zero);
        force.insert(u, &fu + &diff);
        force.insert(v, &fv - &diff);
    }
    force.values().all(RationalVector::is_zero)
}

struct Framework {
    label: String,
    graph: Graph,
    embedding: Embedding,
    involution: Involution,
    dim_sym: usize,
}

type Failures = Vec<String>;

fn expect(fails: &mut Failures, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        fails.push(what());
    }
}

fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce(&mut Failures)) -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&mut fails)));
    let elapsed = start.elapsed();
    if let Err(p) = outcome {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        fails.push(format!("panicked: {msg}"));
    }
    if elapsed > limit {
        fails.push(format!("took {:.2?}, limit {:.0?}", elapsed, limit));
    }
    let verdict = if fails.is_empty() { "PASS" } else { "FAIL" };
    println!("{verdict} {n:>2} {title} ({:.2?}, limit {:.0?})", elapsed, limit);
    for f in fails.iter().take(10) {
        println!("        {f}");
    }
    if fails.len() > 10 {
        println!("        ... {} more", fails.len() - 10);
    }
    fails.is_empty()
}

fn c1(fails: &mut Failures) {
    for d in 3..=8i64 {
        let c = cross_polytope_boundary(d as usize).unwrap();
        let f = brute_f(c.complex());
        let fv = f_vector(c.complex());
        expect(fails, fv.counts() == f.as_slice(), || {
            format!("d={d}: f-vector {:?} vs brute force {f:?}", fv.counts())
        });
        let g2 = g_number(c.complex(), 2).unwrap();
        let want = binom(d, 2) - d;
        expect(fails, g2 == want && g2_oracle(f[1], f[2], d) == want, || {
            format!("d={d}: g2 {g2}, want {want}")
        });
    }
}

fn c2(fails: &mut Failures) {
    for d in 3..=8i64 {
        let c = cross_polytope_boundary(d as usize).unwrap();
        let h = h_polynomial(c.complex()).unwrap();
        let want: Vec<i64> = (0..=d).map(|k| binom(d, k)).collect();
        let from_f = h_from_f(&brute_f(c.complex()), d);
        expect(fails, h.padded(d as usize + 1) == want && from_f == want, || {
            format!("d={d}: h = {h}, transform {from_f:?}, want {want:?}")
        });
    }
}

fn c3(fails: &mut Failures) {
    for d in 2..=8i64 {
        let c = cross_polytope_boundary(d as usize).unwrap();
        for r in 1..=d / 2 {
            let g = g_number(c.complex(), r as usize).unwrap();
            let want = binom(d, r) - binom(d, r - 1);
            expect(fails, g == want, || format!("d={d}, r={r}: g_r {g}, want {want}"));
        }
    }
}

fn c4(fails: &mut Failures, pool: &mut Vec<Framework>) {
    for d in 3..=6usize {
        let di = d as i64;
        for seed in 0..5u64 {
            let label = format!("C*_{d} seed {seed}");
            let p = RealizedPolytope::cross_polytope(d, seed).unwrap();
            expect(fails, p.verify_convex_position().is_ok(), || {
                format!("{label}: not in convex position")
            });
            let g = p.complex.graph();
            let m = rigidity_matrix(&g, &p.embedding).unwrap();
            let rank = m.rank();
            let want_rank = (di * 2 * di - binom(di + 1, 2)) as usize;
            expect(fails, rank == want_rank, || {
                format!("{label}: rank {rank}, want {want_rank}")
            });
            let fr = float_rank(m.matrix(), 1e-9);
            expect(fails, fr == rank, || {
                format!("{label}: floating rank {fr} vs exact {rank}")
            });
            expect(fails, is_infinitesimally_rigid(&g, &p.embedding).unwrap(), || {
                format!("{label}: not rigid")
            });
            let basis = stress_basis(&m);
            let want_s = (binom(di, 2) - di) as usize;
            expect(fails, basis.dim() == want_s, || {
                format!("{label}: dim S {}, want {want_s}", basis.dim())
            });
            for s in &basis.vectors {
                expect(fails, equilibrium_oracle(s, &p.embedding), || {
                    format!("{label}: basis vector not in equilibrium")
                });
            }
            let cs = p.cs().unwrap();
            let sym = symmetric_stress_subspace(&basis, cs.involution()).unwrap();
            expect(fails, sym.dim_sym == basis.dim() && sym.all_symmetric, || {
                format!("{label}: {sym:?}")
            });
            pool.push(Framework {
                label,
                graph: g,
                embedding: p.embedding.clone(),
                involution: cs.involution().clone(),
                dim_sym: sym.dim_sym,
            });
        }
    }
}

fn c5(fails: &mut Failures, pool: &mut Vec<Framework>) {
    for d in 4..=5usize {
        let di = d as i64;
        let want = binom(di, 2) - di;
        for k in 1..=4 {
            for seed in 0..3u64 {
                let label = format!("C*_{d} + {k} symmetric stackings, seed {seed}");
                let script = symmetric_script(d, k, seed).unwrap();
                let p = realize_script(&script, seed).unwrap();
                let f = brute_f(&p.complex);
                expect(fails, f[1] == 2 * (di + k as i64), || format!("{label}: f0 {}", f[1]));
                let g2 = g2_oracle(f[1], f[2], di);
                expect(fails, g2 == want, || format!("{label}: g2 {g2}, want {want}"));
                expect(fails, p.verify_convex_position().is_ok(), || {
                    format!("{label}: not in convex position")
                });
                let alpha = p.involution.clone().expect("symmetric stacking keeps an involution");
                let cs = validate_cs(&p.complex, &alpha);
                expect(fails, cs.is_ok(), || format!("{label}: cs validation {cs:?}"));
                let g = p.complex.graph();
                expect(fails, is_infinitesimally_rigid(&g, &p.embedding).unwrap(), || {
                    format!("{label}: not rigid")
                });
                let basis = stress_basis(&rigidity_matrix(&g, &p.embedding).unwrap());
                expect(fails, basis.dim() as i64 == want, || {
                    format!("{label}: dim S {}, want {want}", basis.dim())
                });
                let sym = symmetric_stress_subspace(&basis, &alpha).unwrap();
                pool.push(Framework {
                    label,
                    graph: g,
                    embedding: p.embedding,
                    involution: alpha,
                    dim_sym: sym.dim_sym,
                });
            }
        }
    }
}

fn c6(fails: &mut Failures) {
    for d in 4..=5usize {
        for (k, seed) in (1..=5).flat_map(|k| (0..3u64).map(move |s| (k, s))) {
            let label = format!("∂Δ^{d} + {k} stackings, seed {seed}");
            let script = stacked_script(d, k, seed).unwrap();
            let p = realize_script(&script, seed).unwrap();
            let f = brute_f(&p.complex);
            expect(fails, f[1] == (d + 1 + k) as i64, || format!("{label}: f0 {}", f[1]));
            expect(fails, p.verify_convex_position().is_ok(), || {
                format!("{label}: not in convex position")
            });
            let g = p.complex.graph();
            let m = rigidity_matrix(&g, &p.embedding).unwrap();
            let s = stress_basis(&m).dim();
            expect(fails, s == 0, || format!("{label}: dim S {s}, want 0"));
            let rows_independent = m.rank() == g.num_edges();
            expect(fails, rows_independent, || format!("{label}: rigidity rows dependent"));
        }
    }
}

fn c7(fails: &mut Failures, pool: &[Framework]) {
    expect(fails, !pool.is_empty(), || "no cs frameworks collected".into());
    for fw in pool {
        let d = fw.embedding.d() as i64;
        let (f0, f1) = (fw.graph.num_vertices() as i64, fw.graph.num_edges() as i64);
        let oracle_bound = f1 - d * f0 + 2 * binom(d, 2);
        let (dim_sym, bound) = symm_stress_bound(&fw.graph, &fw.embedding, &fw.involution).unwrap();
        expect(fails, bound == oracle_bound, || {
            format!("{}: bound {bound}, oracle {oracle_bound}", fw.label)
        });
        expect(fails, dim_sym == fw.dim_sym, || {
            format!("{}: dim_sym {dim_sym} vs {}", fw.label, fw.dim_sym)
        });
        expect(fails, 2 * dim_sym as i64 >= oracle_bound, || {
            format!("{}: 2 dim S_sym = {} < {oracle_bound}", fw.label, 2 * dim_sym)
        });
    }
}

fn c8(fails: &mut Failures) {
    for d in 3..=8i64 {
        let c = cross_polytope_boundary(d as usize).unwrap();
        let f = brute_f(c.complex());
        let (f0, f1) = (f[1], f[2]);
        expect(fails, 4 * f1 == f0 * (f0 + 2 * d - 4), || {
            format!("d={d}: 4 f1 = {}, f0 (f0 + 2d - 4) = {}", 4 * f1, f0 * (f0 + 2 * d - 4))
        });
    }
}

fn c9(fails: &mut Failures) {
    for seed in 0..3u64 {
        let p = RealizedPolytope::cross_polytope(4, seed).unwrap();
        let cs = p.cs().unwrap();
        let c = cs.complex();
        let g = c.graph();
        let mut quadruples = 0;
        for &(u, v) in g.edges() {
            let (nu, nv) = (cs.antipode_vertex(u).unwrap(), cs.antipode_vertex(v).unwrap());
            let star = |w: VertexId| c.star(&Face::new([w]).unwrap()).unwrap().graph();
            let sub = star(nu).union(&star(nv));
            expect(fails, !sub.has_edge(u, v), || {
                format!("seed {seed}: {{{u},{v}}} already in the stars")
            });
            quadruples += 1;
            match stress_through_edge(&sub, &p.embedding, (u, v)).unwrap() {
                Some(s) => {
                    expect(fails, !s.weight(u, v).is_zero(), || {
                        format!("seed {seed}: zero on {{{u},{v}}}")
                    });
                    expect(fails, equilibrium_oracle(&s, &p.embedding), || {
                        format!("seed {seed}: {{{u},{v}}} not in equilibrium")
                    });
                    let support_ok = s
                        .weights
                        .iter()
                        .all(|(&(a, b), w)| w.is_zero() || (a, b) == (u.min(v), u.max(v)) || sub.has_edge(a, b));
                    expect(fails, support_ok, || {
                        format!("seed {seed}: support leaves the subgraph")
                    });
                }
                None => fails.push(format!("seed {seed}: no stress through {{{u},{v}}}")),
            }
        }
        expect(fails, quadruples == 24, || {
            format!("seed {seed}: {quadruples} quadruples, want 24")
        });
    }
}

fn c10(fails: &mut Failures) {
    for d in 4..=5usize {
        let demo = swartz_demo(d).unwrap();
        let (fb, fa) = (brute_f(&demo.before), brute_f(&demo.after));
        let di = d as i64;
        expect(fails, demo.before.is_prime().unwrap(), || {
            format!("d={d}: input not prime")
        });
        let link = demo.before.link(&Face::new([demo.vertex]).unwrap()).unwrap();
        expect(fails, !link.is_prime().unwrap(), || {
            format!("d={d}: link of {} is prime", demo.vertex)
        });
        expect(fails, fa[1] - fb[1] == 1, || format!("d={d}: Δf0 {}", fa[1] - fb[1]));
        expect(fails, fa[2] - fb[2] == di - 1, || {
            format!("d={d}: Δf1 {}", fa[2] - fb[2])
        });
        let dg2 = g2_oracle(fa[1], fa[2], di) - g2_oracle(fb[1], fb[2], di);
        expect(fails, dg2 == -1, || format!("d={d}: Δg2 {dg2}"));
        expect(fails, demo.after.passes_sphere_checks(), || {
            format!("d={d}: output fails sphere checks")
        });
        let h = h_from_f(&fa, di);
        expect(fails, (0..=di as usize).all(|i| h[i] == h[d - i]), || {
            format!("d={d}: h {h:?} not symmetric")
        });
        let euler: i64 = fa[1..]
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { *x } else { -x })
            .sum();
        let want_euler = if d % 2 == 0 { 0 } else { 2 };
        expect(fails, euler == want_euler, || {
            format!("d={d}: Euler characteristic {euler}")
        });
    }
}

fn ellh_rhs(s: &SubdivisionMap) -> IntPolynomial {
    let d = s.base.rank() as i64;
    let mut rhs = IntPolynomial::zero();
    for tau in s.base.all_faces() {
        let ell = s.local_h(tau).unwrap();
        let link = s.base.link(tau).unwrap();
        let h = IntPolynomial::new(h_from_f(&brute_f(&link), d - tau.len() as i64));
        rhs = &rhs + &(&ell * &h);
    }
    rhs
}

fn c11(fails: &mut Failures) {
    for d in 2..=5usize {
        let bases = [
            ("∂Δ", simplex_boundary(d).unwrap()),
            ("C*", cross_polytope_boundary(d).unwrap().complex().clone()),
        ];
        for (name, base) in bases {
            let apex = base.fresh_vertex();
            let facet = base.facets()[0].clone();
            let ridge = facet.without(facet.vertices()[0]);
            let mut maps = vec![
                ("identity", SubdivisionMap::identity(&base)),
                ("facet", SubdivisionMap::stellar(&base, &facet, apex).unwrap()),
            ];
            if ridge.len() >= 2 {
                maps.push(("ridge", SubdivisionMap::stellar(&base, &ridge, apex).unwrap()));
            }
            for (what, s) in maps {
                let lhs = IntPolynomial::new(h_from_f(&brute_f(&s.refinement), d as i64));
                let rhs = ellh_rhs(&s);
                expect(fails, lhs == rhs, || {
                    format!("{name}_{d} {what}: h = {lhs}, sum = {rhs}")
                });
                expect(fails, s.check_ellh_identity(), || {
                    format!("{name}_{d} {what}: library identity check failed")
                });
            }
        }
        let simplex = Face::new(0..d as VertexId).unwrap();
        let s = SubdivisionMap::stellar(&SimplicialComplex::simplex(&simplex), &simplex, d as VertexId).unwrap();
        let ell = s.local_h(&simplex).unwrap();
        let want = IntPolynomial::new((0..d).map(|i| i64::from(i > 0)).collect());
        expect(fails, ell == want, || {
            format!("stellar Δ^{}: ℓ = {ell}, want {want}", d - 1)
        });
        expect(
            fails,
            ell.coefficients().iter().all(|&c| c >= 0) && ell.is_symmetric_about(d),
            || format!("stellar Δ^{}: ℓ = {ell} not non-negative and symmetric", d - 1),
        );
    }
}

fn c12(fails: &mut Failures) {
    for d in 4..=5usize {
        for seed in 0..2u64 {
            let p = RealizedPolytope::cross_polytope(d, seed).unwrap();
            for &u in p.complex.vertices() {
                let vu = Face::new([u]).unwrap();
                let star = p.complex.star(&vu).unwrap().graph();
                let link = p.complex.link(&vu).unwrap().graph();
                let keep: BTreeSet<VertexId> = link.vertices().iter().copied().collect();
                let proj = project_orthogonal(&p.embedding, p.embedding.get(u).unwrap(), &keep).unwrap();
                let s = is_infinitesimally_rigid(&star, &p.embedding).unwrap();
                let l = is_infinitesimally_rigid(&link, &proj).unwrap();
                expect(fails, s == l, || {
                    format!("C*_{d} seed {seed} u={u}: star {s}, projected link {l}")
                });
                // rank oracle for the projected link: full rank minus trivial motions
                let m = rigidity_matrix(&link, &proj).unwrap();
                let dm = (d - 1) as i64;
                let want = link.num_vertices() as i64 * dm - binom(dm + 1, 2);
                expect(fails, (m.rank() as i64 == want) == l, || {
                    format!("C*_{d} seed {seed} u={u}: rank disagrees")
                });
            }
        }
    }
}

fn csrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csrig"))
        .args(args)
        .output()
        .expect("csrig runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn c13(fails: &mut Failures) {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let exit = |o: &Output| o.status.code().unwrap_or(-1);
    let run = |fails: &mut Failures, args: &[&str], code: i32| -> Output {
        let o = csrig(args);
        expect(fails, exit(&o) == code, || {
            format!(
                "csrig {}: exit {}, want {code}; stderr {}",
                args.join(" "),
                exit(&o),
                String::from_utf8_lossy(&o.stderr)
            )
        });
        o
    };

    let cross = path("cross4.json");
    run(fails, &["generate", "cross", "--d", "4", "--out", &cross], 0);
    let bytes = std::fs::read(&cross).unwrap_or_default();
    let doc: serde_json::Value = serde_json::from_slice(&bytes).unwrap_or_default();
    let facets = doc["facets"].as_array().map_or(0, Vec::len);
    expect(fails, facets == 16, || format!("cross d=4: {facets} facets"));
    expect(
        fails,
        doc["coordinates"].as_object().is_some_and(|c| c.len() == 8),
        || "cross d=4: coordinates missing".into(),
    );
    let info = run(fails, &["info", &cross], 0);
    expect(fails, stdout(&info).contains("g_2 = 2"), || {
        format!("info: {}", stdout(&info))
    });
    let canon = run(fails, &["info", "--canonical", &cross], 0);
    expect(fails, canon.stdout == bytes, || {
        "generate -> info -> re-serialize not byte-identical".into()
    });
    let again = path("cross4-again.json");
    std::fs::write(&again, &canon.stdout).unwrap();
    let canon2 = run(fails, &["info", "--canonical", &again], 0);
    expect(fails, canon2.stdout == bytes, || {
        "second round trip not byte-identical".into()
    });

    let sym = path("sym.json");
    run(
        fails,
        &[
            "generate",
            "symmetric-stacked",
            "--d",
            "4",
            "--steps",
            "2",
            "--seed",
            "7",
            "--out",
            &sym,
        ],
        0,
    );
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&sym).unwrap_or_default()).unwrap_or_default();
    let f0 = doc["facets"]
        .as_array()
        .map(|fs| {
            fs.iter()
                .flat_map(|f| f.as_array().cloned().unwrap_or_default())
                .map(|v| v.as_u64())
                .collect::<BTreeSet<_>>()
                .len()
        })
        .unwrap_or(0);
    expect(fails, f0 == 12, || format!("symmetric-stacked: f0 {f0}"));
    expect(
        fails,
        doc["coordinates"].as_object().is_some_and(|c| c.len() == 12),
        || "symmetric-stacked: coordinates missing".into(),
    );
    expect(
        fails,
        doc["involution"].as_array().is_some_and(|a| a.len() == 6),
        || "symmetric-stacked: involution missing".into(),
    );
    let sym2 = path("sym2.json");
    run(
        fails,
        &[
            "generate",
            "symmetric-stacked",
            "--d",
            "4",
            "--steps",
            "2",
            "--seed",
            "7",
            "--out",
            &sym2,
        ],
        0,
    );
    expect(fails, std::fs::read(&sym).ok() == std::fs::read(&sym2).ok(), || {
        "generation not deterministic".into()
    });
    let info = run(fails, &["info", &sym], 0);
    expect(fails, stdout(&info).contains("centrally symmetric: true"), || {
        format!("info: {}", stdout(&info))
    });

    run(fails, &["generate", "cross", "--d", "0"], 2);
    let bad = path("bad.json");
    std::fs::write(&bad, "{\"facets\": [[0,1],").unwrap();
    run(fails, &["info", &bad], 2);

    let simplex = path("simplex.json");
    run(fails, &["generate", "simplex", "--d", "4", "--out", &simplex], 0);
    let info = run(fails, &["info", &simplex], 0);
    expect(fails, stdout(&info).contains("prime: false"), || {
        format!("simplex info: {}", stdout(&info))
    });

    let rig = run(fails, &["rigidity", "--symmetric", &cross], 0);
    let text = stdout(&rig);
    for want in ["rigid: true", "dim S = 2", "dim S_sym = 2"] {
        expect(fails, text.contains(want), || {
            format!("rigidity output lacks {want:?}: {text}")
        });
    }
    let stacked = path("stacked.json");
    run(
        fails,
        &["generate", "stacked", "--d", "4", "--steps", "3", "--out", &stacked],
        0,
    );
    let rig = run(fails, &["rigidity", &stacked], 0);
    expect(fails, stdout(&rig).contains("dim S = 0"), || {
        format!("stacked rigidity: {}", stdout(&rig))
    });
    let comb = path("comb.json");
    run(
        fails,
        &["generate", "cross", "--d", "4", "--combinatorial", "--out", &comb],
        0,
    );
    let o = run(fails, &["rigidity", &comb], 2);
    expect(
        fails,
        String::from_utf8_lossy(&o.stderr).contains("no embedding"),
        || "missing 'no embedding' error".into(),
    );

    let g2cfg = path("g2.json");
    std::fs::write(
        &g2cfg,
        r#"{"checks": ["g2_cross_polytope"], "d_min": 3, "enum_d_max": 8}"#,
    )
    .unwrap();
    let t = Instant::now();
    run(fails, &["verify", &g2cfg], 0);
    expect(fails, t.elapsed() < Duration::from_secs(1), || {
        format!("g2-only verify took {:.2?}", t.elapsed())
    });
    let unknown = path("unknown.json");
    std::fs::write(&unknown, r#"{"checks": ["no_such_check"]}"#).unwrap();
    run(fails, &["verify", &unknown], 2);
    run(fails, &["verify", &path("missing.json")], 2);

    let report = path("report.json");
    let o = run(fails, &["verify", "--jobs", "2", "--report", &report], 0);
    let summary = stdout(&o);
    expect(
        fails,
        summary.lines().count() >= 14 && !summary.contains("FAIL"),
        || format!("default verify: {summary}"),
    );
    let reports: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report).unwrap_or_default()).unwrap_or_default();
    expect(fails, reports.as_array().is_some_and(|a| a.len() == 14), || {
        "verify report is not an array of 14 reports".into()
    });
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let secs = Duration::from_secs;
    let mut pool = Vec::new();
    let mut all = vec![
        criterion(1, "g2(C*_d) = C(d,2) - d, d = 3..8", secs(1), c1),
        criterion(2, "h(C*_d) = (1+x)^d, d = 3..8", secs(1), c2),
        criterion(3, "g_r(C*_d) = C(d,r) - C(d,r-1), d <= 8", secs(10), c3),
        criterion(
            4,
            "realized C*_d rigid, rank and stress space, d = 3..6, seeds 0..4",
            secs(30),
            |f| c4(f, &mut pool),
        ),
        criterion(
            5,
            "symmetric stacking invariance, d = 4,5, k = 1..4, 3 seeds",
            secs(60),
            |f| c5(f, &mut pool),
        ),
        criterion(
            6,
            "stacked polytopes carry no stress, d = 4,5, k <= 5, 3 seeds",
            secs(30),
            c6,
        ),
        criterion(7, "symmetric stress lower bound on every cs framework", secs(30), |f| {
            c7(f, &pool)
        }),
        criterion(8, "handshake identity on C*_d, d = 3..8", secs(10), c8),
        criterion(9, "chordless 4-cycle stress through e on C*_4", secs(30), c9),
        criterion(10, "Swartz operation bookkeeping, d = 4,5", secs(10), c10),
        criterion(11, "local h decomposition and stellar local h", secs(10), c11),
        criterion(12, "cone lemma on C*_d, d = 4,5", secs(60), c12),
        criterion(13, "CLI round trip and exit codes, default verify", secs(120), c13),
    ];
    let passed = all.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", all.len());
    all.retain(|ok| !ok);
    if !all.is_empty() {
        std::process::exit(1);
    }
}
