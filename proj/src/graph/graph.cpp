#include "hageo/graph/graph.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "hageo/util/log.hpp"

namespace hageo::graph {

using glang::ObjKind;

// ---------------------------------------------------------------------------
// predicate tables
// ---------------------------------------------------------------------------

namespace {
struct PredInfo {
    const char* name;
    int arity;
    const char* argkinds;
};
constexpr PredInfo kPredInfo[kNumPreds] = {
    {"coll", 3, "PPP"},
    {"cyclic", 4, "PPPP"},
    {"para", 2, "LL"},
    {"perp", 2, "LL"},
    {"cong", 4, "PPPP"},
    {"eqangle", 4, "LLLL"},
    {"eqratio", 8, "PPPPPPPP"},
    {"midp", 3, "PPP"},
    {"center", 2, "CP"},
    {"simtriP", 6, "PPPPPP"},
    {"simtriN", 6, "PPPPPP"},
    {"contri", 6, "PPPPPP"},
    {"same", 2, "PP"},
};
} // namespace

const char* pred_name(Pred p) { return kPredInfo[int(p)].name; }
int pred_arity(Pred p) { return kPredInfo[int(p)].arity; }
const char* pred_argkinds(Pred p) { return kPredInfo[int(p)].argkinds; }

bool pred_from_name(const std::string& s, Pred& out) {
    for (int i = 0; i < kNumPreds; ++i)
        if (s == kPredInfo[i].name) {
            out = Pred(i);
            return true;
        }
    return false;
}

// ---------------------------------------------------------------------------
// canonicalization: documented symmetry group per predicate
// ---------------------------------------------------------------------------

namespace {

Args permuted(const Args& in, std::initializer_list<int> idx) {
    Args r;
    r.n = in.n;
    int k = 0;
    for (int i : idx) r.a[k++] = in.a[i];
    return r;
}

void sort_range(Args& x, int lo, int hi) { std::sort(x.a.begin() + lo, x.a.begin() + hi); }

// simultaneous permutations of the two triples, plus triple swap
const int kTriPerms[6][3] = {{0,1,2},{0,2,1},{1,0,2},{1,2,0},{2,0,1},{2,1,0}};

} // namespace

std::vector<Args> arg_variants(Pred p, const Args& in) {
    std::vector<Args> v;
    switch (p) {
        case Pred::Coll: case Pred::Cyclic: {
            // full symmetric group: represent by sorted order only
            std::vector<int> idx(in.n);
            for (int i = 0; i < in.n; ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end());
            do {
                Args r; r.n = in.n;
                for (int i = 0; i < in.n; ++i) r.a[i] = in.a[idx[i]];
                v.push_back(r);
            } while (std::next_permutation(idx.begin(), idx.end()));
            break;
        }
        case Pred::Para: case Pred::Perp: case Pred::Same:
            v.push_back(in);
            v.push_back(permuted(in, {1, 0}));
            break;
        case Pred::Cong: {
            for (auto s1 : {false, true})
                for (auto s2 : {false, true})
                    for (auto sw : {false, true}) {
                        Args r = in;
                        if (s1) std::swap(r.a[0], r.a[1]);
                        if (s2) std::swap(r.a[2], r.a[3]);
                        if (sw) { std::swap(r.a[0], r.a[2]); std::swap(r.a[1], r.a[3]); }
                        v.push_back(r);
                    }
            break;
        }
        case Pred::EqAngle:
            // dir(a)-dir(b) = dir(c)-dir(d): side swap and joint reversal
            v.push_back(in);
            v.push_back(permuted(in, {2, 3, 0, 1}));
            v.push_back(permuted(in, {1, 0, 3, 2}));
            v.push_back(permuted(in, {3, 2, 1, 0}));
            break;
        case Pred::EqRatio: {
            // |s1|/|s2| = |s3|/|s4|  <=>  s1*s4 = s2*s3: the 8 pairings, with
            // each segment unordered
            static const int seg_orders[8][4] = {
                {0,1,2,3},{1,0,3,2},{2,3,0,1},{3,2,1,0},
                {0,2,1,3},{2,0,3,1},{1,3,0,2},{3,1,2,0}};
            for (auto& so : seg_orders) {
                Args r; r.n = 8;
                for (int s = 0; s < 4; ++s) {
                    ObjId x = in.a[2 * so[s]], y = in.a[2 * so[s] + 1];
                    if (y < x) std::swap(x, y);
                    r.a[2 * s] = x; r.a[2 * s + 1] = y;
                }
                v.push_back(r);
            }
            break;
        }
        case Pred::Midp: {
            v.push_back(in);
            v.push_back(permuted(in, {0, 2, 1}));
            break;
        }
        case Pred::Center:
            v.push_back(in);
            break;
        case Pred::SimtriP: case Pred::SimtriN: case Pred::Contri: {
            for (auto& tp : kTriPerms)
                for (auto sw : {false, true}) {
                    Args r; r.n = 6;
                    for (int i = 0; i < 3; ++i) {
                        r.a[i] = in.a[sw ? 3 + tp[i] : tp[i]];
                        r.a[3 + i] = in.a[sw ? tp[i] : 3 + tp[i]];
                    }
                    v.push_back(r);
                }
            break;
        }
    }
    return v;
}

Args canonical_args(Pred p, const Args& in) {
    switch (p) {
        case Pred::Coll: case Pred::Cyclic: {
            Args r = in;
            sort_range(r, 0, r.n);
            return r;
        }
        case Pred::Para: case Pred::Perp: case Pred::Same: {
            Args r = in;
            sort_range(r, 0, 2);
            return r;
        }
        case Pred::Midp: {
            Args r = in;
            sort_range(r, 1, 3);
            return r;
        }
        case Pred::Center:
            return in;
        default: {
            auto v = arg_variants(p, in);
            return *std::min_element(v.begin(), v.end());
        }
    }
}

bool trivial_fact(Pred p, const Args& x) {
    switch (p) {
        case Pred::Coll:
            return x.a[0] == x.a[1] || x.a[0] == x.a[2] || x.a[1] == x.a[2];
        case Pred::Cyclic: {
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (x.a[i] == x.a[j]) return true;
            return false;
        }
        case Pred::Para: case Pred::Perp: case Pred::Same:
            return p != Pred::Perp && x.a[0] == x.a[1];
        case Pred::Cong:
            return (x.a[0] == x.a[2] && x.a[1] == x.a[3]) || (x.a[0] == x.a[3] && x.a[1] == x.a[2]) ||
                   (x.a[0] == x.a[1] && x.a[2] == x.a[3]);
        case Pred::EqAngle:
            return (x.a[0] == x.a[1] && x.a[2] == x.a[3]) || (x.a[0] == x.a[2] && x.a[1] == x.a[3]);
        case Pred::EqRatio:
            return (x.a[0] == x.a[2] && x.a[1] == x.a[3] && x.a[4] == x.a[6] && x.a[5] == x.a[7]) ||
                   (x.a[0] == x.a[4] && x.a[1] == x.a[5] && x.a[2] == x.a[6] && x.a[3] == x.a[7]) ||
                   (x.a[0] == x.a[1]) || (x.a[2] == x.a[3]) || (x.a[4] == x.a[5]) || (x.a[6] == x.a[7]);
        case Pred::Midp:
            return x.a[1] == x.a[2];
        case Pred::SimtriP: case Pred::SimtriN: case Pred::Contri: {
            bool same = true;
            for (int i = 0; i < 3; ++i) same &= x.a[i] == x.a[3 + i];
            if (same) return true;
            return x.a[0] == x.a[1] || x.a[0] == x.a[2] || x.a[1] == x.a[2] ||
                   x.a[3] == x.a[4] || x.a[3] == x.a[5] || x.a[4] == x.a[5];
        }
        case Pred::Center:
            return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// objects
// ---------------------------------------------------------------------------

ObjId DeductionGraph::add_object(ObjKind kind, const std::string& name, uint32_t plan_step) {
    ObjRec o;
    o.kind = kind;
    o.parent = ObjId(objs_.size());
    o.name = name;
    o.plan_step = plan_step;
    objs_.push_back(std::move(o));
    return ObjId(objs_.size() - 1);
}

ObjId DeductionGraph::find(ObjId x) const {
    if (x == kNoObj) return x;
    while (objs_[x].parent != x) x = objs_[x].parent;
    return x;
}

ObjId DeductionGraph::line_through(ObjId a, ObjId b) const {
    a = find(a); b = find(b);
    if (a == b) return kNoObj;
    auto it = pair_line_.find({std::min(a, b), std::max(a, b)});
    return it == pair_line_.end() ? kNoObj : find(it->second);
}

ObjId DeductionGraph::circle_through(ObjId a, ObjId b, ObjId c) const {
    std::array<ObjId, 3> k{find(a), find(b), find(c)};
    std::sort(k.begin(), k.end());
    auto it = triple_circle_.find(k);
    return it == triple_circle_.end() ? kNoObj : find(it->second);
}

ObjId DeductionGraph::intern_line(ObjId a, ObjId b) {
    a = find(a); b = find(b);
    if (a == b) throw KindMismatch("line through a single point");
    if (kind(a) != ObjKind::Point || kind(b) != ObjKind::Point)
        throw KindMismatch("intern_line expects points");
    ObjId l = line_through(a, b);
    if (l != kNoObj) return l;
    l = add_object(ObjKind::Line, name(std::min(a, b)) + name(std::max(a, b)));
    add_line_member(l, a, kNoFact);
    add_line_member(l, b, kNoFact);
    return l;
}

bool DeductionGraph::coincident(ObjId a, ObjId b) const {
    a = find(a); b = find(b);
    if (a == b) return true;
    if (!guard_ || !guard_cfg_) return false;
    return numeric::dist(coords_of(a).pt, coords_of(b).pt) <
           guard_cfg_->tau_margin * guard_->scale;
}

void DeductionGraph::pair_entry(ObjId line, ObjId a, ObjId b) {
    // a pair of handles only identifies a line when the diagram can tell the
    // points apart; coincident handles are exactly the identical-point case
    if (coincident(a, b)) return;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = pair_line_.find(key);
    if (it == pair_line_.end()) {
        pair_line_[key] = line;
        return;
    }
    ObjId other = find(it->second);
    if (other != line) {
        Justification j;
        j.kind = Justification::Kind::LineMembers;
        merge_queue_.push_back({{line, other}, j});
    }
}

void DeductionGraph::add_line_member(ObjId line, ObjId p, FactId src) {
    line = find(line); p = find(p);
    {
        const auto& members = objs_[line].members;
        if (std::find(members.begin(), members.end(), p) != members.end()) return;
        const std::vector<ObjId> snapshot = members;
        for (ObjId m : snapshot) pair_entry(line, p, m);
    }
    objs_[line].members.push_back(p);
    objs_[line].member_src.push_back(src);
    if (objs_[line].members.size() >= 3) materialize_coll(line, p);
    if (!in_merge_) {
        MergeReport rep;
        process_merge_queue(rep);
    }
}

void DeductionGraph::triple_entry(ObjId circle, ObjId a, ObjId b, ObjId c) {
    if (coincident(a, b) || coincident(a, c) || coincident(b, c)) return;
    std::array<ObjId, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    auto it = triple_circle_.find(key);
    if (it == triple_circle_.end()) {
        triple_circle_[key] = circle;
        return;
    }
    ObjId other = find(it->second);
    if (other != circle) {
        Justification j;
        j.kind = Justification::Kind::CircleMembers;
        merge_queue_.push_back({{circle, other}, j});
    }
}

void DeductionGraph::add_circle_member(ObjId circle, ObjId p, FactId src) {
    circle = find(circle); p = find(p);
    {
        const auto& members = objs_[circle].members;
        if (std::find(members.begin(), members.end(), p) != members.end()) return;
        const std::vector<ObjId> snapshot = members;
        for (size_t i = 0; i < snapshot.size(); ++i)
            for (size_t j = i + 1; j < snapshot.size(); ++j)
                triple_entry(circle, p, snapshot[i], snapshot[j]);
    }
    objs_[circle].members.push_back(p);
    objs_[circle].member_src.push_back(src);
    if (objs_[circle].members.size() >= 4) materialize_cyclic(circle, p);
    if (!in_merge_) {
        MergeReport rep;
        process_merge_queue(rep);
    }
}

void DeductionGraph::set_circle_center(ObjId circle, ObjId o, FactId src) {
    circle = find(circle); o = find(o);
    ObjRec& C = objs_[circle];
    if (C.center == kNoObj) {
        C.center = o;
        C.center_src = src;
        return;
    }
    if (find(C.center) != o) {
        Justification j;
        j.kind = Justification::Kind::CenterUnique;
        if (C.center_src != kNoFact) j.antecedents.push_back(C.center_src);
        if (src != kNoFact) j.antecedents.push_back(src);
        merge_queue_.push_back({{find(C.center), o}, j});
    }
}

void DeductionGraph::materialize_coll(ObjId line, ObjId p) {
    // copy: asserting below can reallocate the object table
    const std::vector<ObjId> members = objs_[line].members;
    const std::vector<FactId> srcs = objs_[line].member_src;
    std::vector<std::pair<ObjId, FactId>> others;
    FactId psrc = kNoFact;
    for (size_t i = 0; i < members.size(); ++i) {
        if (members[i] != p) others.push_back({members[i], srcs[i]});
        else psrc = srcs[i];
    }
    for (size_t i = 0; i < others.size(); ++i)
        for (size_t j = i + 1; j < others.size(); ++j) {
            Justification just;
            just.kind = Justification::Kind::LineMembers;
            for (FactId s : {psrc, others[i].second, others[j].second})
                if (s != kNoFact) just.antecedents.push_back(s);
            assert_fact(Pred::Coll, make_args({p, others[i].first, others[j].first}), just);
        }
}

void DeductionGraph::materialize_cyclic(ObjId circle, ObjId p) {
    const std::vector<ObjId> members = objs_[circle].members;
    const std::vector<FactId> srcs = objs_[circle].member_src;
    std::vector<std::pair<ObjId, FactId>> others;
    FactId psrc = kNoFact;
    for (size_t i = 0; i < members.size(); ++i) {
        if (members[i] == p) psrc = srcs[i];
        else others.push_back({members[i], srcs[i]});
    }
    for (size_t i = 0; i < others.size(); ++i)
        for (size_t j = i + 1; j < others.size(); ++j)
            for (size_t k = j + 1; k < others.size(); ++k) {
                Justification just;
                just.kind = Justification::Kind::CircleMembers;
                for (FactId s : {psrc, others[i].second, others[j].second, others[k].second})
                    if (s != kNoFact) just.antecedents.push_back(s);
                assert_fact(Pred::Cyclic,
                            make_args({p, others[i].first, others[j].first, others[k].first}), just);
            }
}

std::vector<ObjId> DeductionGraph::points() const {
    std::vector<ObjId> r;
    for (ObjId i = 0; i < objs_.size(); ++i)
        if (objs_[i].kind == ObjKind::Point && find(i) == i) r.push_back(i);
    return r;
}
std::vector<ObjId> DeductionGraph::lines() const {
    std::vector<ObjId> r;
    for (ObjId i = 0; i < objs_.size(); ++i)
        if (objs_[i].kind == ObjKind::Line && find(i) == i) r.push_back(i);
    return r;
}
std::vector<ObjId> DeductionGraph::circles() const {
    std::vector<ObjId> r;
    for (ObjId i = 0; i < objs_.size(); ++i)
        if (objs_[i].kind == ObjKind::Circle && find(i) == i) r.push_back(i);
    return r;
}

// ---------------------------------------------------------------------------
// facts
// ---------------------------------------------------------------------------

Args DeductionGraph::canon(Pred p, Args in) const {
    for (int i = 0; i < in.n; ++i) {
        if (in.a[i] >= objs_.size()) throw UnknownObject("fact references unknown object");
        in.a[i] = find(in.a[i]);
    }
    return canonical_args(p, in);
}

void DeductionGraph::check_args(Pred p, const Args& args) const {
    if (args.n != pred_arity(p)) throw KindMismatch("arity mismatch for fact");
    const char* ks = pred_argkinds(p);
    for (int i = 0; i < args.n; ++i) {
        ObjKind want = ks[i] == 'P' ? ObjKind::Point : ks[i] == 'L' ? ObjKind::Line : ObjKind::Circle;
        if (p == Pred::Same) want = objs_[args.a[0]].kind;  // any, but equal kinds
        if (objs_[args.a[i]].kind != want)
            throw KindMismatch(std::string("fact ") + pred_name(p) + " argument " +
                               std::to_string(i) + " has wrong kind");
    }
}

double DeductionGraph::fact_residual(Pred p, const Args& args) const {
    std::vector<numeric::ObjCoord> cs;
    for (int i = 0; i < args.n; ++i) cs.push_back(coords_of(args.a[i]));
    return numeric::residual_resolved(pred_name(p), cs, guard_->scale);
}

FactId DeductionGraph::assert_fact(Pred p, Args args, Justification j) {
    args = canon(p, args);
    check_args(p, args);
    if (trivial_fact(p, args)) return kNoFact;
    auto key = std::make_pair(int(p), args);
    auto it = fact_index_.find(key);
    if (it != fact_index_.end()) return kNoFact;

    if (guard_ && guard_mode_ != GuardMode::Off) {
        double r = fact_residual(p, args);
        if (!(r < guard_cfg_->tau_rel)) {
            std::string desc = pred_name(p);
            desc += "(";
            for (int i = 0; i < args.n; ++i) desc += (i ? "," : "") + name(args.a[i]);
            desc += ")";
            std::string m = "numeric gate: " + desc + " residual " + std::to_string(r) +
                            " justkind=" + std::to_string(int(j.kind)) +
                            " rule=" + std::to_string(j.rule);
            violations_.push_back(m);
            if (guard_mode_ == GuardMode::Throw) throw SoundnessViolation(m);
            return kNoFact;
        }
    }

    FactRec rec;
    rec.pred = p;
    rec.args = args;
    rec.just = std::move(j);
    rec.stamp = ++stamp_;
    FactId f = FactId(facts_.size());
    facts_.push_back(std::move(rec));
    ++live_facts_;
    index_fact(f);

    if (p == Pred::Same) {
        Justification cause;
        cause.kind = facts_[f].just.kind;
        cause.rule = facts_[f].just.rule;
        cause.antecedents = {f};
        merge_objects(args.a[0], args.a[1], cause);
    } else {
        fact_membership_effects(f);
        if (!in_merge_) {
            MergeReport rep;
            process_merge_queue(rep);
        }
    }
    return f;
}

void DeductionGraph::index_fact(FactId f) {
    const FactRec& rec = facts_[f];
    fact_index_[{int(rec.pred), rec.args}] = f;
    by_pred_[int(rec.pred)].push_back(f);
    ObjId seen[8];
    int ns = 0;
    for (int i = 0; i < rec.args.n; ++i) {
        ObjId x = rec.args.a[i];
        bool dup = false;
        for (int s = 0; s < ns; ++s) dup |= seen[s] == x;
        if (!dup) {
            seen[ns++] = x;
            obj_facts_[x].push_back(f);
        }
    }
}

void DeductionGraph::fact_membership_effects(FactId f) {
    const FactRec rec = facts_[f];  // copy: asserts below may reallocate
    switch (rec.pred) {
        case Pred::Coll: {
            ObjId a = rec.args.a[0], b = rec.args.a[1], c = rec.args.a[2];
            ObjId l = line_through(a, b);
            if (l == kNoObj) l = line_through(a, c);
            if (l == kNoObj) l = line_through(b, c);
            if (l == kNoObj) l = intern_line(a, b);
            for (ObjId p : {a, b, c}) add_line_member(l, p, f);
            break;
        }
        case Pred::Cyclic: {
            ObjId w = kNoObj;
            const auto& x = rec.args.a;
            for (int i = 0; i < 4 && w == kNoObj; ++i) {
                ObjId t[3];
                int k = 0;
                for (int jx = 0; jx < 4; ++jx)
                    if (jx != i) t[k++] = x[jx];
                w = circle_through(t[0], t[1], t[2]);
            }
            if (w == kNoObj) {
                w = add_object(ObjKind::Circle, "o(" + name(x[0]) + name(x[1]) + name(x[2]) + ")");
                add_circle_member(w, x[0], kNoFact);
                add_circle_member(w, x[1], kNoFact);
                add_circle_member(w, x[2], kNoFact);
            }
            for (int i = 0; i < 4; ++i) add_circle_member(w, x[i], f);
            break;
        }
        case Pred::Center:
            set_circle_center(rec.args.a[0], rec.args.a[1], f);
            break;
        default:
            break;
    }
}

bool DeductionGraph::has_fact(Pred p, Args args) const {
    return find_fact(p, args) != kNoFact;
}

FactId DeductionGraph::find_fact(Pred p, Args args) const {
    for (int i = 0; i < args.n; ++i) {
        if (args.a[i] >= objs_.size()) return kNoFact;
        args.a[i] = find(args.a[i]);
    }
    args = canonical_args(p, args);
    if (trivial_fact(p, args)) return kNoFact;
    auto it = fact_index_.find({int(p), args});
    return it == fact_index_.end() ? kNoFact : it->second;
}

std::vector<FactId> DeductionGraph::query(Pred p, const Args& pattern) const {
    std::vector<FactId> out;
    for (FactId f : by_pred_[int(p)]) {
        const FactRec& rec = facts_[f];
        if (rec.shadowed || rec.trivial) continue;
        for (const Args& v : arg_variants(p, rec.args)) {
            bool ok = v.n == pattern.n;
            for (int i = 0; ok && i < v.n; ++i)
                if (pattern.a[i] != kNoObj && find(pattern.a[i]) != v.a[i]) ok = false;
            if (ok) {
                out.push_back(f);
                break;
            }
        }
    }
    return out;
}

const std::vector<FactId>& DeductionGraph::facts_touching(ObjId x) const {
    static const std::vector<FactId> empty;
    auto it = obj_facts_.find(find(x));
    return it == obj_facts_.end() ? empty : it->second;
}

// ---------------------------------------------------------------------------
// merging
// ---------------------------------------------------------------------------

MergeReport DeductionGraph::merge_objects(ObjId a, ObjId b, Justification why) {
    MergeReport rep;
    do_merge(a, b, std::move(why), rep);
    process_merge_queue(rep);
    return rep;
}

void DeductionGraph::process_merge_queue(MergeReport& rep) {
    while (!merge_queue_.empty()) {
        auto [pr, j] = merge_queue_.back();
        merge_queue_.pop_back();
        do_merge(pr.first, pr.second, j, rep);
        ++rep.cascaded_merges;
    }
}

void DeductionGraph::do_merge(ObjId a, ObjId b, Justification why, MergeReport& rep) {
    a = find(a); b = find(b);
    if (a == b) return;
    if (objs_[a].kind != objs_[b].kind)
        throw KindMismatch("cannot merge objects of different kinds");
    // prefer program-anchored objects as representatives, then lower ids
    bool a_wins = objs_[a].plan_step != glang::kNone
                      ? (objs_[b].plan_step == glang::kNone || a < b)
                      : (objs_[b].plan_step == glang::kNone && a < b);
    ObjId w = a_wins ? a : b, l = a_wins ? b : a;
    log::debug("merge %s <- %s", objs_[w].name.c_str(), objs_[l].name.c_str());
    rep.winner = w;
    rep.loser = l;

    bool outer = !in_merge_;
    in_merge_ = true;
    objs_[l].parent = w;

    if (objs_[w].kind != ObjKind::Point) {
        // carry members/center of the losing curve over
        auto members = objs_[l].members;
        auto srcs = objs_[l].member_src;
        for (size_t i = 0; i < members.size(); ++i) {
            if (objs_[w].kind == ObjKind::Line) add_line_member(w, members[i], srcs[i]);
            else add_circle_member(w, members[i], srcs[i]);
        }
        if (objs_[w].kind == ObjKind::Circle && objs_[l].center != kNoObj)
            set_circle_center(w, objs_[l].center, objs_[l].center_src);
    } else {
        // point: update membership of every curve that contains the loser
        for (ObjId i = 0; i < objs_.size(); ++i) {
            if (find(i) != i || objs_[i].kind == ObjKind::Point) continue;
            ObjRec& C = objs_[i];
            auto it = std::find(C.members.begin(), C.members.end(), l);
            if (it == C.members.end()) continue;
            FactId src = C.member_src[size_t(it - C.members.begin())];
            C.member_src.erase(C.member_src.begin() + (it - C.members.begin()));
            C.members.erase(it);
            if (objs_[i].kind == ObjKind::Line) add_line_member(i, w, src);
            else add_circle_member(i, w, src);
        }
        for (ObjId i = 0; i < objs_.size(); ++i)
            if (objs_[i].center != kNoObj && find(objs_[i].center) == w) objs_[i].center = w;
    }

    // re-canonicalize facts that touch the loser
    auto touching = obj_facts_[l];  // copy
    for (FactId f : touching) rewrite_fact(f, rep);

    if (outer) {
        in_merge_ = false;
        process_merge_queue(rep);
    }
}

void DeductionGraph::rewrite_fact(FactId f, MergeReport& rep) {
    FactRec& rec = facts_[f];
    if (rec.shadowed || rec.trivial || rec.pred == Pred::Same) return;
    Args nw = canon(rec.pred, rec.args);
    if (nw == rec.args) return;
    auto old_key = std::make_pair(int(rec.pred), rec.args);
    auto it = fact_index_.find(old_key);
    if (it != fact_index_.end() && it->second == f) fact_index_.erase(it);

    auto drop_from_pred_list = [&] {
        auto& lst = by_pred_[int(rec.pred)];
        lst.erase(std::remove(lst.begin(), lst.end(), f), lst.end());
    };

    if (trivial_fact(rec.pred, nw)) {
        rec.trivial = true;
        --live_facts_;
        drop_from_pred_list();
        rep.dropped_trivial.push_back(f);
        log::debug("merge trivialized fact #%u (%s)", f, pred_name(rec.pred));
        return;
    }
    auto new_key = std::make_pair(int(rec.pred), nw);
    auto collide = fact_index_.find(new_key);
    if (collide != fact_index_.end()) {
        rec.args = nw;
        rec.shadowed = true;
        --live_facts_;
        drop_from_pred_list();
        rep.shadowed.push_back(f);
        return;
    }
    rec.args = nw;
    rec.stamp = ++stamp_;
    fact_index_[new_key] = f;
    for (int i = 0; i < nw.n; ++i) {
        auto& v = obj_facts_[nw.a[i]];
        if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
    }
    rep.rewritten.push_back(f);
    fact_membership_effects(f);
}

// ---------------------------------------------------------------------------
// numeric resolution and dumps
// ---------------------------------------------------------------------------

void DeductionGraph::set_guard(const numeric::Diagram* d, const numeric::NumericConfig* cfg,
                               GuardMode m) {
    guard_ = d;
    guard_cfg_ = cfg;
    guard_mode_ = m;
}

numeric::ObjCoord DeductionGraph::coords_of(ObjId x) const {
    if (!guard_) throw UnknownObject("no diagram attached");
    x = find(x);
    const ObjRec& o = objs_[x];
    if (o.plan_step != glang::kNone) return guard_->at(o.plan_step);
    numeric::ObjCoord oc;
    oc.kind = o.kind;
    if (o.kind == ObjKind::Line) {
        if (o.members.size() < 2) throw UnknownObject("line with fewer than two known points");
        oc.line = numeric::LineN::through(coords_of(o.members[0]).pt, coords_of(o.members[1]).pt);
    } else if (o.kind == ObjKind::Circle) {
        if (o.center != kNoObj && !o.members.empty()) {
            numeric::Vec2 c = coords_of(o.center).pt;
            oc.circle = {c, numeric::dist(c, coords_of(o.members[0]).pt)};
        } else if (o.members.size() >= 3) {
            auto c = numeric::circumcenter(coords_of(o.members[0]).pt, coords_of(o.members[1]).pt,
                                           coords_of(o.members[2]).pt);
            if (!c) throw UnknownObject("degenerate circle members");
            oc.circle = {*c, numeric::dist(*c, coords_of(o.members[0]).pt)};
        } else {
            throw UnknownObject("circle with insufficient data");
        }
    } else {
        throw UnknownObject("point without plan anchor");
    }
    return oc;
}

std::string DeductionGraph::describe_fact(FactId f) const {
    const FactRec& rec = facts_.at(f);
    std::ostringstream os;
    os << pred_name(rec.pred) << "(";
    for (int i = 0; i < rec.args.n; ++i) os << (i ? "," : "") << name(rec.args.a[i]);
    os << ")";
    return os.str();
}

std::string DeductionGraph::dump_facts() const {
    std::ostringstream os;
    for (FactId f = 0; f < facts_.size(); ++f) {
        const FactRec& rec = facts_[f];
        if (rec.shadowed || rec.trivial) continue;
        os << describe_fact(f) << "\t";
        switch (rec.just.kind) {
            case Justification::Kind::Premise: os << "premise"; break;
            case Justification::Kind::AuxDef: os << "aux"; break;
            case Justification::Kind::Rule: os << "rule#" << rec.just.rule; break;
            case Justification::Kind::Algebraic: os << "ar"; break;
            case Justification::Kind::LineMembers: os << "lines"; break;
            case Justification::Kind::CircleMembers: os << "circles"; break;
            case Justification::Kind::CenterUnique: os << "center"; break;
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// construction seeding
// ---------------------------------------------------------------------------

namespace {

ObjId plan_arg_obj(DeductionGraph& g, const glang::PlanArg& a) {
    if (a.is_line_of()) return g.intern_line(a.obj, a.p2);
    return a.obj;
}

} // namespace

std::pair<Pred, Args> plan_fact_to_graph(DeductionGraph& g, const glang::PlanFact& pf) {
    Pred p;
    if (!pred_from_name(pf.pred, p)) throw UnknownObject("unknown plan predicate " + pf.pred);
    Args args;
    for (const auto& a : pf.args) args.a[args.n++] = plan_arg_obj(g, a);
    return {p, args};
}

DeductionGraph build_graph(const glang::ConstructionPlan& plan, const numeric::Diagram* d,
                           const numeric::NumericConfig* cfg, GuardMode mode, size_t aux_from) {
    using Op = glang::PlanStep::Op;
    DeductionGraph g;
    g.set_guard(d, cfg, mode);
    for (uint32_t i = 0; i < plan.steps.size(); ++i) {
        const auto& st = plan.steps[i];
        ObjId id = g.add_object(st.kind, st.name, i);
        switch (st.op) {
            case Op::LineThrough:
                g.add_line_member(id, st.refs[0], kNoFact);
                g.add_line_member(id, st.refs[1], kNoFact);
                break;
            case Op::LineParallel: case Op::LinePerp:
                g.add_line_member(id, st.refs[0], kNoFact);
                break;
            case Op::AngleLocus:
                g.add_line_member(id, st.refs[0], kNoFact);
                break;
            case Op::CircleCenterThrough:
                g.add_circle_member(id, st.refs[1], kNoFact);
                break;
            case Op::Circumcircle:
                g.add_circle_member(id, st.refs[0], kNoFact);
                g.add_circle_member(id, st.refs[1], kNoFact);
                g.add_circle_member(id, st.refs[2], kNoFact);
                break;
            default:
                break;
        }
    }
    for (const auto& pf : plan.facts) {
        Justification j;
        j.kind = (pf.stmt != glang::kNone && pf.stmt >= aux_from) ? Justification::Kind::AuxDef
                                                                  : Justification::Kind::Premise;
        if (pf.pred == "on_line") {
            ObjId p = pf.args[0].obj, l = g.find(pf.args[1].obj);
            const ObjRec& L = g.obj(l);
            // name the incidence as a coll premise when two incident points
            // are already known; otherwise the membership is definitional
            std::vector<ObjId> prior;
            for (ObjId m : L.members)
                if (m != g.find(p)) prior.push_back(m);
            FactId src = kNoFact;
            if (prior.size() >= 2)
                src = g.assert_fact(Pred::Coll, make_args({p, prior[0], prior[1]}), j);
            g.add_line_member(l, p, src);
            // a point landing on an angle-locus line realizes its equality
            uint32_t ps = g.obj(l).plan_step;
            if (ps != glang::kNone && plan.steps[ps].op == Op::AngleLocus) {
                const auto& refs = plan.steps[ps].refs;
                if (g.find(p) != g.find(refs[0])) {
                    ObjId apex = refs[0], ray = refs[1], P = refs[2], Q = refs[3], R = refs[4];
                    g.assert_fact(Pred::EqAngle,
                                  make_args({g.intern_line(apex, p), g.intern_line(apex, ray),
                                             g.intern_line(Q, P), g.intern_line(Q, R)}),
                                  j);
                }
            }
        } else if (pf.pred == "on_circle") {
            ObjId p = pf.args[0].obj, w = g.find(pf.args[1].obj);
            ObjId o = g.center_of(w);
            const auto& members = g.members_of(w);
            FactId src = kNoFact;
            if (o != kNoObj && !members.empty() && g.find(members[0]) != g.find(p))
                src = g.assert_fact(Pred::Cong, make_args({o, p, o, members[0]}), j);
            g.add_circle_member(w, p, src);
        } else {
            auto [p, args] = plan_fact_to_graph(g, pf);
            g.assert_fact(p, args, j);
        }
    }
    return g;
}

std::vector<std::pair<Pred, Args>> goal_facts(const DeductionGraph& g,
                                              const glang::ConstructionPlan& plan) {
    std::vector<std::pair<Pred, Args>> out;
    auto& gg = const_cast<DeductionGraph&>(g);
    for (const auto& pf : plan.goal) out.push_back(plan_fact_to_graph(gg, pf));
    return out;
}

} // namespace hageo::graph
