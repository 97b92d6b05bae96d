use qforest::parallel::Parallel;
use qforest_core::count::SequentialShards;
use qforest_core::counting::{count_nonvanishing, count_support_invertible, rank_profile, SupportAlgo, SupportPattern};
use qforest_core::treepoly::TreePoly;
use qforest_core::{Budget, Engine, FieldCtx, Family, Graph};

#[test]
fn counts_match_sequential_for_every_thread_count() {
    let seq = Engine::sequential();
    let g = Graph::family(Family::CompleteMinusClique { n: 5, k: 2 }).unwrap();
    for q in ["2", "3", "4"] {
        let ctx = FieldCtx::parse(q).unwrap();
        let want = count_nonvanishing(&g, TreePoly::Q, &ctx, &seq).unwrap();
        let want_f = count_nonvanishing(&g, TreePoly::P, &ctx, &seq).unwrap();
        let want_profile = rank_profile(&g, 2, &ctx, &seq).unwrap();
        for threads in [1, 2, 3, 8] {
            let par = Engine::new(Parallel::new(threads).unwrap(), Budget::default());
            assert_eq!(count_nonvanishing(&g, TreePoly::Q, &ctx, &par).unwrap(), want);
            assert_eq!(count_nonvanishing(&g, TreePoly::P, &ctx, &par).unwrap(), want_f);
            assert_eq!(rank_profile(&g, 2, &ctx, &par).unwrap(), want_profile);
            if threads > 1 {
                assert!(par.exec.shards() > 3);
            }
        }
    }
}

#[test]
fn fano_brute_is_shard_independent() {
    let ctx = FieldCtx::parse("2").unwrap();
    let s = SupportPattern::fano();
    let seq = count_support_invertible(&s, SupportAlgo::Brute, &ctx, &Engine::sequential()).unwrap();
    let shards = Engine::new(SequentialShards(5), Budget::default());
    assert_eq!(count_support_invertible(&s, SupportAlgo::Brute, &ctx, &shards).unwrap(), seq);
    let par = Engine::new(Parallel::new(4).unwrap(), Budget::default());
    assert_eq!(count_support_invertible(&s, SupportAlgo::Brute, &ctx, &par).unwrap(), seq);
}
