//! Relevance spreading under growing budgets. Each result extends the
//! previous one, so retrieval can be stopped at any point.
//!
//! cargo run --example anytime_retrieval

use localdiag::{fixtures, retrieve, Observation, RetrievalBudget};

fn main() {
    let file = fixtures::eleven_gates();
    let system = file.system();
    let graph = file.graph().unwrap().expect("fixture has components");
    let obs = Observation::new(fixtures::observation());
    println!("{} atoms, {} edges", graph.node_count(), graph.edge_count());

    let budgets = (1..=4)
        .map(RetrievalBudget::rounds)
        .chain([RetrievalBudget::marked(5), RetrievalBudget::unbounded()]);
    for budget in budgets {
        let r = retrieve(&obs, system.ass(), &graph, budget);
        let relevant: Vec<String> = r.relevant.iter().map(|a| a.to_string()).collect();
        let marked: Vec<String> = r.marked.iter().map(|a| a.to_string()).collect();
        println!(
            "{budget:?}: relevant [{}] marked [{}]{}",
            relevant.join(" "),
            marked.join(" "),
            if r.budget_exhausted { " (cut short)" } else { "" }
        );
    }
}
