use zx_core::{Color, Diagram, NodeKind};

fn parity(d: &Diagram, color: Color) -> u8 {
    let odd = d.nodes().iter().filter(|(id, k)| k.color() == Some(color) && d.degree(id) % 2 == 1).count();
    let hboxes = d.nodes().values().filter(|k| matches!(k, NodeKind::H)).count();
    ((odd + hboxes) % 2) as u8
}

/// Parity of odd-degree X spiders plus H boxes. Self-loops count twice.
pub fn invariant_r(d: &Diagram) -> u8 {
    parity(d, Color::X)
}

/// The same count with Z spiders in place of X spiders.
pub fn invariant_g(d: &Diagram) -> u8 {
    parity(d, Color::Z)
}
