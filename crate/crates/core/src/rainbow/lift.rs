use super::{EdgeColoring, RainbowError, MAX_COLOR};
use crate::graph::{bits, mask_of, ContractionMap};

/// Lifts a coloring of `cm.target` back to `cm.source`.
///
/// Edges that survive the contraction keep their target color. Inside each
/// class of merged source vertices, a BFS spanning tree gets `|class| - 1`
/// distinct fresh colors (one per re-expanded vertex, starting at
/// `fresh_start`); any other edge inside the class reuses that class's first
/// fresh color. The result uses at most `colors(c') + |V(source)| -
/// |V(target)|` colors.
pub fn lift_coloring_through_contraction(
    cm: &ContractionMap,
    target_coloring: &EdgeColoring,
    fresh_start: u8,
) -> Result<EdgeColoring, RainbowError> {
    target_coloring.validate_total(&cm.target)?;
    let max_used = target_coloring.max_color();
    if fresh_start == 0 || fresh_start <= max_used {
        return Err(RainbowError::FreshColorCollision { fresh_start, max_used });
    }
    let src = &cm.source;
    let extra = src.order() - cm.target.order();
    let top = fresh_start as usize + extra.saturating_sub(1);
    let q = target_coloring.palette().max(max_used as usize).max(if extra > 0 { top } else { 0 });
    if q > MAX_COLOR as usize {
        return Err(RainbowError::PaletteTooLarge(q));
    }

    let mut c = EdgeColoring::uncolored(src, q)?;
    for (i, mapped) in cm.edge_map.iter().enumerate() {
        if let Some(t) = mapped {
            let ti = cm.target.edge_index(t.u, t.v).ok_or_else(|| RainbowError::Internal(format!("edge {t} missing from target")))?;
            c.set(i, target_coloring.color(ti));
        }
    }

    let mut next = fresh_start;
    for t in 0..cm.target.order() {
        let class = cm.class_of(t);
        if class.len() < 2 {
            continue;
        }
        let within = mask_of(&class);
        let first = next;
        let mut seen = 1u64 << class[0];
        let mut queue = std::collections::VecDeque::from([class[0]]);
        while let Some(v) = queue.pop_front() {
            for w in bits(src.neighbors(v) & within & !seen) {
                seen |= 1 << w;
                queue.push_back(w);
                let idx = src.edge_index(v, w).expect("neighbor edge exists");
                c.set(idx, next);
                next += 1;
            }
        }
        if seen != within {
            return Err(RainbowError::Internal(format!("contracted class {class:?} is not connected in the source")));
        }
        for (i, e) in src.edges().iter().enumerate() {
            if c.color(i) == 0 && within >> e.u & 1 == 1 && within >> e.v & 1 == 1 {
                c.set(i, first);
            }
        }
    }
    c.validate_total(src)?;
    Ok(c)
}
