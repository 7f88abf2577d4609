//! Small named graphs used throughout tests, benches and docs.

use super::DirectedGraph;

fn build(f: impl FnOnce(&mut super::GraphBuilder) -> crate::Result<()>) -> DirectedGraph {
    let mut b = DirectedGraph::builder();
    f(&mut b).expect("catalog graph is well formed");
    b.build().expect("catalog graph is well formed")
}

/// One vertex `v`, no edges.
pub fn single_vertex() -> DirectedGraph {
    build(|b| b.vertex("v").map(drop))
}

/// One vertex `v` with a single loop `e`.
pub fn single_loop() -> DirectedGraph {
    build(|b| {
        b.vertex("v")?;
        b.edge("e", "v", "v")?;
        Ok(())
    })
}

/// One vertex `v` with loops `y1..yn`.
pub fn rose(n: usize) -> DirectedGraph {
    build(|b| {
        b.vertex("v")?;
        for i in 1..=n {
            b.edge(&format!("y{i}"), "v", "v")?;
        }
        Ok(())
    })
}

/// The line `v1 -> v2 -> ... -> vn`. Edges are `e1..`, except that the
/// two-vertex line names its only edge `e`.
pub fn line(n: usize) -> DirectedGraph {
    build(|b| {
        for i in 1..=n {
            b.vertex(&format!("v{i}"))?;
        }
        for i in 1..n {
            let name = if n == 2 { "e".to_string() } else { format!("e{i}") };
            b.edge(&name, &format!("v{i}"), &format!("v{}", i + 1))?;
        }
        Ok(())
    })
}

/// Vertex `u` with loop `e` and an edge `f` to the sink `w`.
pub fn toeplitz() -> DirectedGraph {
    build(|b| {
        b.vertex("u")?;
        b.vertex("w")?;
        b.edge("e", "u", "u")?;
        b.edge("f", "u", "w")?;
        Ok(())
    })
}

/// Vertex `u` flagged as an infinite emitter, listing loops `e1..en`.
pub fn flagged_rose(n: usize) -> DirectedGraph {
    build(|b| {
        b.vertex("u")?;
        for i in 1..=n {
            b.edge(&format!("e{i}"), "u", "u")?;
        }
        b.flag_infinite("u")
    })
}
