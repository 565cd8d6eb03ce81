#include "flagstab/flag.hpp"

#include <algorithm>

#include "flagstab/errors.hpp"

namespace flagstab {

Chain::Chain(std::vector<Subspace> members, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), members_(std::move(members)) {
    for (const Subspace& m : members_)
        if (m.ambient_dim() != ambient_dim_)
            throw input_error("chain member has wrong ambient dimension");
    std::sort(members_.begin(), members_.end(),
              [](const Subspace& a, const Subspace& b) {
                  if (a.dim() != b.dim()) return a.dim() < b.dim();
                  return a < b;
              });
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (std::size_t i = 0; i + 1 < members_.size(); ++i) {
        if (members_[i].dim() == members_[i + 1].dim() ||
            !members_[i + 1].contains(members_[i]))
            throw input_error("chain members are not totally ordered by inclusion");
    }
}

GeneralizedFlag::GeneralizedFlag(std::vector<FlagPair> pairs, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), pairs_(std::move(pairs)) {
    for (const FlagPair& pr : pairs_) {
        if (pr.pred.ambient_dim() != ambient_dim_ || pr.succ.ambient_dim() != ambient_dim_)
            throw input_error("flag pair has wrong ambient dimension");
        if (!(pr.succ.contains(pr.pred) && pr.pred.dim() < pr.succ.dim()))
            throw input_error("flag pair predecessor must be strictly below successor");
    }
    if (!pairs_.empty() && pairs_.front().pred.dim() != 0)
        throw input_error("first flag predecessor must be the zero subspace");
    for (std::size_t i = 0; i + 1 < pairs_.size(); ++i) {
        if (pairs_[i].succ != pairs_[i + 1].pred)
            throw input_error("consecutive flag pairs must share their boundary");
    }
}

Subspace GeneralizedFlag::support() const {
    if (pairs_.empty()) return Subspace(ambient_dim_);
    return pairs_.back().succ;
}

std::vector<Subspace> GeneralizedFlag::members() const {
    std::vector<Subspace> out;
    if (pairs_.empty()) return out;
    out.push_back(pairs_.front().pred);
    for (const FlagPair& pr : pairs_) out.push_back(pr.succ);
    return out;
}

bool GeneralizedFlag::operator==(const GeneralizedFlag& other) const {
    if (ambient_dim_ != other.ambient_dim_ || pairs_.size() != other.pairs_.size())
        return false;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (pairs_[i].pred != other.pairs_[i].pred || pairs_[i].succ != other.pairs_[i].succ ||
            pairs_[i].inf_marker != other.pairs_[i].inf_marker)
            return false;
    }
    return true;
}

bool GeneralizedFlag::operator<(const GeneralizedFlag& other) const {
    if (ambient_dim_ != other.ambient_dim_) return ambient_dim_ < other.ambient_dim_;
    if (pairs_.size() != other.pairs_.size()) return pairs_.size() < other.pairs_.size();
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (pairs_[i].succ != other.pairs_[i].succ) return pairs_[i].succ < other.pairs_[i].succ;
        if (pairs_[i].pred != other.pairs_[i].pred) return pairs_[i].pred < other.pairs_[i].pred;
        if (pairs_[i].inf_marker != other.pairs_[i].inf_marker) return other.pairs_[i].inf_marker;
    }
    return false;
}

GeneralizedFlag fl_from_chain(const Chain& c, const Subspace& top) {
    if (c.size() == 0) throw input_error("fl of an empty chain");
    if (c.member(0).dim() != 0)
        throw input_error("fl needs the zero subspace as a chain member");
    if (c.members().back() != top)
        throw input_error("fl needs the top subspace as the largest chain member");
    std::vector<FlagPair> pairs;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        pairs.push_back({c.member(i), c.member(i + 1), false});
    return GeneralizedFlag(std::move(pairs), c.ambient_dim());
}

std::size_t locate(const GeneralizedFlag& f, const Vec& x) {
    if (x.size() != f.ambient_dim())
        throw input_error("locate: vector has wrong ambient dimension");
    bool zero = std::all_of(x.begin(), x.end(), [](const Rational& v) { return sgn(v) == 0; });
    if (zero) throw input_error("locate: the zero vector lies in no pair gap");
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.pair(i).succ.contains(x)) return i;
    throw input_error("locate: vector lies outside the flag support");
}

bool is_refinement(const GeneralizedFlag& g, const GeneralizedFlag& f) {
    if (g.ambient_dim() != f.ambient_dim())
        throw precondition_error("refinement check needs a common ambient dimension");
    if (g.support() != f.support())
        throw precondition_error("refinement check needs a common support");
    std::vector<Subspace> gm = g.members();
    for (const Subspace& m : f.members()) {
        bool found = std::any_of(gm.begin(), gm.end(),
                                 [&](const Subspace& x) { return x == m; });
        if (!found) return false;
    }
    return true;
}

FlagReport flag_report(const GeneralizedFlag& f, const Pairing& p) {
    if (f.ambient_dim() != p.left_dim())
        throw input_error("flag_report: flag does not live on the pairing's left side");
    FlagReport report;
    report.is_maximal = true;
    report.is_closed = true;
    report.is_bivalent = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const FlagPair& pr = f.pair(i);
        std::size_t codim = pr.succ.dim() - pr.pred.dim();
        if (pr.inf_marker || codim != 1) report.is_maximal = false;

        Subspace pred_closure = closure(pr.pred, p);
        Subspace succ_closure = closure(pr.succ, p);
        bool pred_closed = pred_closure == pr.pred;
        if (succ_closure != pr.succ) report.is_closed = false;
        if (!pred_closed && pred_closure != pr.succ) report.is_closed = false;

        if (pred_closed) {
            report.good_pairs.push_back(i);
            if (codim != 1 && !pr.inf_marker) report.is_bivalent = false;
        }
    }
    return report;
}

GeneralizedFlag iso_part(const GeneralizedFlag& f, const Pairing& p) {
    if (!p.is_form()) throw precondition_error("iso_part needs a form");
    std::vector<FlagPair> pairs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!classify(f.pair(i).succ, p).is_isotropic) break;
        pairs.push_back(f.pair(i));
    }
    return GeneralizedFlag(std::move(pairs), f.ambient_dim());
}

std::optional<GeneralizedFlag> twin(const GeneralizedFlag& f, const Pairing& p) {
    if (!p.is_symmetric()) throw precondition_error("twin needs a symmetric form");
    if (f.empty()) throw precondition_error("twin of an empty flag");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.pair(i).succ.dim() != f.pair(i).pred.dim() + 1)
            throw precondition_error("twin needs a maximal flag (codimension-1 pairs)");
        if (!classify(f.pair(i).succ, p).is_isotropic)
            throw precondition_error("twin needs an isotropic flag");
    }
    Subspace m = f.support();
    IsotropyReport top = classify(m, p);
    if (!top.is_maximal_isotropic)
        throw precondition_error("twin needs the support to be maximal isotropic");
    FlagReport report = flag_report(f, p);
    if (!report.is_closed)
        throw precondition_error("twin needs a closed flag");

    // A twin exists iff the support is self-perpendicular: that is exactly
    // when the final predecessor has a two-dimensional perp quotient.
    if (perp(m, p) != m) return std::nullopt;

    const Subspace& l = f.pair(f.size() - 1).pred;
    std::vector<Subspace> exts = maximal_isotropic_extensions(l, p);
    require_internal(exts[0] == m || exts[1] == m,
                     "support is not among the isotropic extensions of its predecessor");
    const Subspace& other = exts[0] == m ? exts[1] : exts[0];

    std::vector<FlagPair> pairs = f.pairs();
    pairs.back().succ = other;
    return GeneralizedFlag(std::move(pairs), f.ambient_dim());
}

bool is_borel_refinement(const GeneralizedFlag& g, const GeneralizedFlag& f,
                         const Pairing& p, const PredClosureFn& certified_closure) {
    if (g.ambient_dim() != f.ambient_dim())
        throw precondition_error("borel refinement check needs a common ambient dimension");
    if (g.support() != f.support())
        throw precondition_error("borel refinement check needs a common support");

    auto closure_of_pred = [&](std::size_t index, const Subspace& pred) {
        if (certified_closure) return certified_closure(index, pred);
        return closure(pred, p);
    };

    std::size_t gi = 0;
    for (std::size_t fi = 0; fi < f.size(); ++fi) {
        const FlagPair& fp = f.pair(fi);
        if (gi >= g.size()) return false;
        if (!fp.inf_marker) {
            const FlagPair& gp = g.pair(gi);
            if (gp.pred != fp.pred || gp.succ != fp.succ) return false;
            ++gi;
            continue;
        }
        // Inside a marked gap: walk codim-1 steps from fp.pred to fp.succ,
        // each predecessor closing up to the gap's successor.
        if (g.pair(gi).pred != fp.pred) return false;
        while (true) {
            if (gi >= g.size()) return false;
            const FlagPair& gp = g.pair(gi);
            if (!fp.succ.contains(gp.succ)) return false;
            if (gp.succ.dim() != gp.pred.dim() + 1) return false;
            if (closure_of_pred(gi, gp.pred) != fp.succ) return false;
            ++gi;
            if (gp.succ == fp.succ) break;
        }
    }
    return gi == g.size();
}

}  // namespace flagstab
