#include "briar/context.hpp"

#include <set>

#include "briar/errors.hpp"

namespace briar {

std::shared_ptr<const SpineContext> SpineContext::make(FactorSignature sig,
                                                       std::vector<Word> W) {
  sig.validate();
  auto ctx = std::make_shared<SpineContext>();
  ctx->sig = std::move(sig);
  ctx->W = std::move(W);

  const int n = ctx->sig.n();
  ctx->table_class.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (ctx->table_class[i] >= 0) continue;
    int cls = static_cast<int>(ctx->class_rep.size());
    ctx->class_rep.push_back(i);
    ctx->table_class[i] = cls;
    for (int j = i + 1; j < n; ++j)
      if (ctx->table_class[j] < 0 &&
          tables_isomorphic(ctx->sig.factors[i], ctx->sig.factors[j]))
        ctx->table_class[j] = cls;
  }
  ctx->iso_to_rep.resize(n);
  for (int i = 0; i < n; ++i) {
    int rep = ctx->class_rep[ctx->table_class[i]];
    auto isos = table_isomorphisms(ctx->sig.factors[i], ctx->sig.factors[rep]);
    ctx->iso_to_rep[i] = isos.front();  // fixed representative iso
  }
  ctx->class_auts.resize(ctx->class_rep.size());
  for (size_t c = 0; c < ctx->class_rep.size(); ++c)
    ctx->class_auts[c] = table_automorphisms(ctx->sig.factors[ctx->class_rep[c]]);
  return ctx;
}

std::shared_ptr<const SpineContext> SpineContext::make_standard(
    FactorSignature sig, std::vector<Word> extra) {
  std::vector<Word> W = build_standard_W(sig);
  std::set<std::vector<Letter>> seen;
  for (const auto& w : W) seen.insert(w.letters);
  for (auto& w : extra)
    if (!w.empty() && seen.insert(w.letters).second) W.push_back(std::move(w));
  return make(std::move(sig), std::move(W));
}

int SpineContext::word_index(const Word& w) const {
  for (size_t i = 0; i < W.size(); ++i)
    if (W[i] == w) return static_cast<int>(i);
  return -1;
}

}  // namespace briar
