use cmh::detect::{angel_detect, demon_detect};
use cmh::graph::Graph;

fn main() {
    let (g, _) = Graph::parse_edge_list(include_str!("../data/kar.edges")).unwrap();
    let (w, _) = Graph::parse_edge_list(include_str!("../data/words.edges")).unwrap();
    let d: Vec<usize> = (0..10).map(|s| demon_detect(&g, 0.8, 3, s).len()).collect();
    let a: Vec<usize> = (0..10).map(|s| angel_detect(&g, 0.8, 3, s).len()).collect();
    println!("kar demon {:?}", d);
    println!("kar angel {:?}", a);
    let d: Vec<usize> = (0..5).map(|s| demon_detect(&w, 0.8, 3, s).len()).collect();
    let a: Vec<usize> = (0..5).map(|s| angel_detect(&w, 0.8, 3, s).len()).collect();
    println!("words demon {:?}", d);
    println!("words angel {:?}", a);
}
