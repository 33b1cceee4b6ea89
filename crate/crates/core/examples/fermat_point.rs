//! Fermat points of a few triangles, including the obtuse-vertex case.

use meshtopo::steiner::fermat_point;
use meshtopo::Point;

fn main() -> meshtopo::Result<()> {
    let h = 3f64.sqrt() / 2.0;
    let cases = [
        ("equilateral", [(0.0, 0.0), (1.0, 0.0), (0.5, h)]),
        ("right 3-4-5", [(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]),
        ("obtuse (153 deg at origin)", [(0.0, 0.0), (2.0, 0.0), (-1.0, 0.5)]),
    ];
    for (name, pts) in cases {
        let [a, b, c] = pts.map(|(x, y)| Point::new(x, y));
        let f = fermat_point(a, b, c)?;
        let total = f.dist(a) + f.dist(b) + f.dist(c);
        println!("{name:28} -> ({:.7}, {:.7}), total distance {total:.9}", f.x, f.y);
    }
    Ok(())
}
