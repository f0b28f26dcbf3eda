use modtower::automaton::AutomorphismAutomaton;
use modtower::neretin::SpheromorphismSymbol;
use modtower::thompson::spine_translation;

fn bits(s: &str) -> Vec<bool> { s.chars().map(|c| c == '1').collect() }
fn show(v: &[bool]) -> String { v.iter().map(|&b| if b {'1'} else {'0'}).collect() }

fn main() {
    let tau = SpheromorphismSymbol::from_automaton(AutomorphismAutomaton::root_swap());
    let tr = SpheromorphismSymbol::from_v(&spine_translation());
    for depth in [0usize, 1, 2] {
        for (name, delta) in [("fwd", tr.clone()), ("inv", tr.inverse())] {
            let alpha = SpheromorphismSymbol::from_automaton(AutomorphismAutomaton::spine_swap(depth));
            let comm = delta.compose(&alpha).compose(&delta.inverse()).compose(&alpha.inverse());
            let mut ok = true;
            for w in ["000001","001100","010101","101010","110011","000000","111111"] {
                let w = bits(w);
                let lhs = comm.act_on_word(&w);
                let rhs = tau.act_on_word(&w);
                if lhs != rhs { ok = false; }
            }
            println!("depth={depth} delta={name}: words_match={ok} symbol_equal={}", comm.equal(&tau));
            if depth == 1 && name == "inv" {
                for w in ["000001","001100","10"] {
                    let w2 = bits(w);
                    println!("  comm({w}) = {:?} vs tau = {:?}", comm.act_on_word(&w2).map(|v|show(&v)), tau.act_on_word(&w2).map(|v|show(&v)));
                }
            }
        }
    }
}
