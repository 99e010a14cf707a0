use super::*;
use crate::graph::{make_clique, make_path};

fn clique(vs: &[usize], h: &[u64], g: &[u64]) -> Strategy {
    Strategy::Clique(
        CliqueLeaf::new(
            vs.iter().map(|&v| Slot::Vertex(v)).collect(),
            h.to_vec(),
            g.to_vec(),
        )
        .unwrap(),
    )
}

fn arrangements(h: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &hv in h {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..hv).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out
}

fn correct_counts(s: &Strategy, graph: &Graph) -> Vec<usize> {
    let spec = game_of(s, graph).unwrap();
    let c = CompiledStrategy::compile(s).unwrap();
    arrangements(spec.hatness())
        .iter()
        .map(|colors| {
            (0..graph.vertex_count())
                .filter(|&v| c.is_correct(graph, colors, v).unwrap())
                .count()
        })
        .collect()
}

fn full_guesses(s: &Strategy, graph: &Graph, colors: &[u64], v: usize) -> Vec<u64> {
    let c = CompiledStrategy::compile(s).unwrap();
    let view = FullView {
        graph,
        colors,
        target: v,
    };
    c.guesses(Slot::Vertex(v), &view).unwrap()
}

#[test]
fn symmetric_triangle_guesses_its_index() {
    let s = clique(&[0, 1, 2], &[3, 3, 3], &[1, 1, 1]);
    let g = make_clique(3).unwrap();
    for colors in arrangements(&[3, 3, 3]) {
        for i in 0..3 {
            let seen: u64 = (0..3).filter(|&j| j != i).map(|j| colors[j]).sum();
            let want = (3 + i as u64 - seen % 3) % 3;
            assert_eq!(full_guesses(&s, &g, &colors, i), vec![want]);
        }
    }
    assert!(correct_counts(&s, &g).iter().all(|&k| k == 1));
}

#[test]
fn balanced_edge_is_perfect() {
    let s = clique(&[0, 1], &[2, 2], &[1, 1]);
    assert!(correct_counts(&s, &make_clique(2).unwrap())
        .iter()
        .all(|&k| k == 1));
}

#[test]
fn path_leaf_center_can_be_silent() {
    let s = Strategy::P3(P3Leaf {
        end_u: Slot::Vertex(0),
        center: Slot::Vertex(1),
        end_w: Slot::Vertex(2),
        hatness: 2,
        guesses: 1,
    });
    let g = make_path(3).unwrap();
    assert!(full_guesses(&s, &g, &[0, 0, 1], 1).is_empty());
}

#[test]
fn scaled_edge_guesses_twice_as_much() {
    let s = Strategy::Scale(ScaleNode {
        factor: 2,
        inner: Box::new(clique(&[0, 1], &[2, 2], &[1, 1])),
    });
    let g = make_clique(2).unwrap();
    let spec = game_of(&s, &g).unwrap();
    assert_eq!(spec.hatness(), &[4, 4]);
    for colors in arrangements(&[4, 4]) {
        for v in 0..2 {
            let gs = full_guesses(&s, &g, &colors, v);
            assert_eq!(gs.len(), 2);
            assert!(gs.iter().all(|&c| c < 4));
        }
    }
}

#[test]
fn scaling_preserves_winning() {
    let g2 = make_clique(2).unwrap();
    let p3 = make_path(3).unwrap();
    let bases = [
        (clique(&[0, 1], &[2, 2], &[1, 1]), &g2),
        (clique(&[0, 1], &[3, 3], &[1, 2]), &g2),
        (
            Strategy::P3(P3Leaf {
                end_u: Slot::Vertex(0),
                center: Slot::Vertex(1),
                end_w: Slot::Vertex(2),
                hatness: 5,
                guesses: 2,
            }),
            &p3,
        ),
    ];
    for (base, graph) in bases {
        assert!(correct_counts(&base, graph).iter().all(|&k| k >= 1));
        for factor in 2..4 {
            let s = Strategy::Scale(ScaleNode {
                factor,
                inner: Box::new(base.clone()),
            });
            assert!(correct_counts(&s, graph).iter().all(|&k| k >= 1));
        }
    }
}

#[test]
fn game_of_examples() {
    let right = clique(&[0, 1], &[2, 2], &[1, 1])
        .relabel(&|v| if v == 0 { Slot::Pivot } else { Slot::Vertex(2) })
        .unwrap();
    let join = Strategy::join(
        clique(&[0, 1], &[2, 2], &[1, 1]),
        right,
        vec![Slot::Vertex(1)],
    )
    .unwrap();
    let p3 = make_path(3).unwrap();
    let spec = game_of(&join, &p3).unwrap();
    assert_eq!(spec.hatness(), &[2, 4, 2]);
    assert_eq!(spec.guesses(), &[1, 1, 1]);
    let counts = correct_counts(&join, &p3);
    assert_eq!(counts.len(), 16);
    assert!(counts.iter().all(|&k| k >= 1));

    let leaf = Strategy::P3(P3Leaf {
        end_u: Slot::Vertex(0),
        center: Slot::Vertex(1),
        end_w: Slot::Vertex(2),
        hatness: 5,
        guesses: 2,
    });
    let spec = game_of(&leaf, &p3).unwrap();
    assert_eq!(spec.hatness(), &[5, 5, 5]);
    assert_eq!(spec.guesses(), &[2, 2, 2]);

    let scaled = Strategy::Scale(ScaleNode {
        factor: 3,
        inner: Box::new(clique(&[0, 1], &[2, 2], &[1, 1])),
    });
    let spec = game_of(&scaled, &make_clique(2).unwrap()).unwrap();
    assert_eq!(spec.hatness(), &[6, 6]);
    assert_eq!(spec.guesses(), &[3, 3]);
}

#[test]
fn uncovered_vertices_abstain() {
    let s = clique(&[0, 1], &[2, 2], &[1, 1]);
    let spec = game_of(&s, &make_path(3).unwrap()).unwrap();
    assert_eq!(spec.hatness(), &[2, 2, 1]);
    assert_eq!(spec.guesses(), &[1, 1, 0]);
    let err = guesses(&s, &spec, 2, &[Some(0), Some(0), None]).unwrap_err();
    assert!(matches!(err, StrategyError::MalformedStrategy(_)));
}

#[test]
fn missing_neighbor_is_reported() {
    let s = clique(&[0, 1, 2], &[3, 3, 3], &[1, 1, 1]);
    let spec = game_of(&s, &make_clique(3).unwrap()).unwrap();
    assert_eq!(
        guesses(&s, &spec, 0, &[None, Some(1), None]),
        Err(StrategyError::MissingNeighborColor {
            vertex: 0,
            neighbor: 2
        })
    );
    assert_eq!(
        guesses(&s, &spec, 0, &[None, Some(1), Some(1)]),
        Ok(vec![1])
    );
}

#[test]
fn pad_fills_with_smallest_colors() {
    let inner = clique(&[0, 1], &[3, 3], &[1, 2]);
    let s = Strategy::Pad(PadNode {
        guesses: vec![2, 2],
        inner: Box::new(inner.clone()),
    });
    let g = make_clique(2).unwrap();
    for colors in arrangements(&[3, 3]) {
        for v in 0..2 {
            let base = full_guesses(&inner, &g, &colors, v);
            let padded = full_guesses(&s, &g, &colors, v);
            assert_eq!(padded.len(), 2);
            assert!(base.iter().all(|c| padded.contains(c)));
            let extra: Vec<u64> = (0..3)
                .filter(|c| !base.contains(c))
                .take(2 - base.len())
                .collect();
            assert!(extra.iter().all(|c| padded.contains(c)));
        }
    }
    let bad = Strategy::Pad(PadNode {
        guesses: vec![0, 2],
        inner: Box::new(inner),
    });
    assert!(bad.cover().is_err());
}

#[test]
fn pivot_mismatch_is_inconsistent() {
    let right = clique(&[0, 1], &[2, 2], &[1, 1])
        .relabel(&|v| if v == 0 { Slot::Pivot } else { Slot::Vertex(2) })
        .unwrap();
    let bad = Strategy::Join(JoinNode {
        separator: vec![Slot::Vertex(1)],
        pivot_hatness: 3,
        pivot_guesses: 1,
        left: Box::new(clique(&[0, 1], &[2, 2], &[1, 1])),
        right: Box::new(right.clone()),
    });
    assert!(matches!(
        bad.cover(),
        Err(StrategyError::InconsistentComposition(_))
    ));
    let overlap = Strategy::join(
        clique(&[0, 1], &[2, 2], &[1, 1]),
        clique(&[0, 1], &[2, 2], &[1, 1])
            .relabel(&|v| if v == 0 { Slot::Pivot } else { Slot::Vertex(0) })
            .unwrap(),
        vec![Slot::Vertex(1)],
    );
    assert!(matches!(
        overlap,
        Err(StrategyError::InconsistentComposition(_))
    ));
}

#[test]
fn relabel_rejects_shadowed_pivot() {
    let inner_right = clique(&[0, 1], &[2, 2], &[1, 1])
        .relabel(&|v| if v == 0 { Slot::Pivot } else { Slot::Vertex(5) })
        .unwrap();
    let nested = Strategy::join(
        clique(&[3, 4], &[2, 2], &[1, 1]),
        inner_right,
        vec![Slot::Vertex(4)],
    )
    .unwrap();
    // Vertex 3 lives in the left block, vertex 5 in the nested right block.
    assert!(nested
        .relabel(&|v| if v == 3 { Slot::Pivot } else { Slot::Vertex(v) })
        .is_ok());
    assert!(nested
        .relabel(&|v| if v == 5 { Slot::Pivot } else { Slot::Vertex(v) })
        .is_err());
}

fn valid_p3(h: u64, g: u64) -> bool {
    (g * g + h * h) < 3 * g * h
}

fn fib_pairs() -> Vec<(u64, u64)> {
    let mut f = vec![1u64, 1];
    while f.len() < 12 {
        let k = f.len();
        f.push(f[k - 1] + f[k - 2]);
    }
    (1..6).map(|i| (f[2 * i], f[2 * i - 2])).collect()
}

#[test]
fn path_leaf_bounds_hold_for_every_pair() {
    let mut params: Vec<(u64, u64)> = (1..=30u64)
        .flat_map(|h| (1..=h).map(move |g| (h, g)))
        .filter(|&(h, g)| valid_p3(h, g))
        .collect();
    params.extend(fib_pairs());
    let p3 = make_path(3).unwrap();
    for (h, g) in params {
        let s = Strategy::P3(P3Leaf {
            end_u: Slot::Vertex(0),
            center: Slot::Vertex(1),
            end_w: Slot::Vertex(2),
            hatness: h,
            guesses: g,
        });
        let c = CompiledStrategy::compile(&s).unwrap();
        for cu in 0..h {
            for cw in 0..h {
                let colors = [cu, 0, cw];
                let view = FullView {
                    graph: &p3,
                    colors: &colors,
                    target: 1,
                };
                let center = c.guesses(Slot::Vertex(1), &view).unwrap();
                assert!(center.len() as u64 <= g, "h={h} g={g}");
                let iu: Vec<u64> = (0..g).map(|t| (cu + t) % h).collect();
                let iw: Vec<u64> = (0..g)
                    .map(|t| (cw + (2 * t * h + g) / (2 * g)) % h)
                    .collect();
                let both = iu.iter().filter(|x| iw.contains(x)).count() as u64;
                assert!(both + h <= 3 * g, "h={h} g={g}");
                for x in 0..h {
                    let expected = !iu.contains(&x) && !iw.contains(&x);
                    assert_eq!(center.contains(&x), expected);
                    assert_eq!(c.contains(Slot::Vertex(1), x, &view).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn invalid_path_leaf_is_rejected() {
    // 2² - 3·2·6 + 6² = 4 > 0: the center would need more than g guesses.
    let s = Strategy::P3(P3Leaf {
        end_u: Slot::Vertex(0),
        center: Slot::Vertex(1),
        end_w: Slot::Vertex(2),
        hatness: 6,
        guesses: 2,
    });
    assert!(matches!(
        CompiledStrategy::compile(&s),
        Err(StrategyError::P3BoundViolated { .. })
    ));
}

#[test]
fn text_format_examples() {
    let s = clique(&[0, 1], &[2, 2], &[1, 1]);
    let text = serialize(&s);
    assert_eq!(text, "CLIQUE 2\nV 0 1\nH 2 2\nG 1 1\nEND\n");
    assert_eq!(deserialize(&text).unwrap(), s);
    let truncated = &text[..text.len() - 4];
    assert!(matches!(
        deserialize(truncated),
        Err(StrategyError::Parse { .. })
    ));
    assert!(matches!(
        deserialize("CLIQUE 2\nV 0 1\nH 2 2\n"),
        Err(StrategyError::Parse { line: 4, .. })
    ));
    assert!(deserialize("CLIQUE 2\nV 0 1\nH 2 2\nG 1 1\nEND\nEND\n").is_err());
    assert!(deserialize("CLIQUE 2\nV 0 01\nH 2 2\nG 1 1\nEND\n").is_err());
}

#[test]
fn nested_text_round_trips() {
    let right = clique(&[0, 1], &[2, 2], &[1, 1])
        .relabel(&|v| if v == 0 { Slot::Pivot } else { Slot::Vertex(2) })
        .unwrap();
    let join = Strategy::join(
        clique(&[0, 1], &[2, 2], &[1, 1]),
        right,
        vec![Slot::Vertex(1)],
    )
    .unwrap();
    let s = Strategy::Pad(PadNode {
        guesses: vec![2, 2, 2],
        inner: Box::new(Strategy::Scale(ScaleNode {
            factor: 2,
            inner: Box::new(join),
        })),
    });
    let text = serialize(&s);
    assert!(text.contains("RIGHT\nCLIQUE 2\nV * 2\n"));
    let back = deserialize(&text).unwrap();
    assert_eq!(back, s);
    assert_eq!(serialize(&back), text);
}
