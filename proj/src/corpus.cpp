#include "padic/corpus.hpp"

namespace padic {

namespace {

Polynomial form(PrimeContext ctx, long nvars,
                std::initializer_list<std::pair<std::vector<unsigned>, long>> spec) {
    std::vector<Term> terms;
    for (const auto& [exps, c] : spec) terms.push_back(Term{exps, PadicRational(c, ctx)});
    return Polynomial::make(nvars, std::move(terms), ctx);
}

} // namespace

std::vector<CorpusEntry> bundled_corpus() {
    std::vector<CorpusEntry> out;
    for (long p : {2L, 3L, 5L, 97L}) {
        PrimeContext ctx(p);
        const std::string suffix = "_p" + std::to_string(p);
        out.push_back({"mono" + suffix,
                       HomogeneousMap::from_forms(ctx, 2,
                                                  {form(ctx, 2, {{{2, 0}, 1}}),
                                                   form(ctx, 2, {{{0, 2}, 1}})})});
        out.push_back({"scaled" + suffix,
                       HomogeneousMap::from_forms(ctx, 2,
                                                  {form(ctx, 2, {{{2, 0}, 1}}),
                                                   form(ctx, 2, {{{0, 2}, 3}})})});
        out.push_back({"shifted" + suffix,
                       HomogeneousMap::from_forms(ctx, 2,
                                                  {form(ctx, 2, {{{2, 0}, 1}, {{0, 2}, 3}}),
                                                   form(ctx, 2, {{{0, 2}, 1}})})});
        out.push_back({"mixed" + suffix,
                       HomogeneousMap::from_forms(ctx, 2,
                                                  {form(ctx, 2, {{{2, 0}, 1}, {{1, 1}, 1}}),
                                                   form(ctx, 2, {{{0, 2}, 1}, {{2, 0}, 3}})})});
    }
    PrimeContext ctx3(3);
    out.push_back({"surface_p3",
                   HomogeneousMap::from_forms(ctx3, 2,
                                              {form(ctx3, 3, {{{2, 0, 0}, 1}}),
                                               form(ctx3, 3, {{{0, 2, 0}, 1}}),
                                               form(ctx3, 3, {{{0, 0, 2}, 3}})})});
    return out;
}

} // namespace padic
