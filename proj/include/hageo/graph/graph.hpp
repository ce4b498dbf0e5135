#pragma once
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hageo/glang/plan.hpp"
#include "hageo/graph/fact.hpp"
#include "hageo/numeric/diagram.hpp"

namespace hageo::graph {

struct KindMismatch : std::runtime_error {
    explicit KindMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct UnknownObject : std::runtime_error {
    explicit UnknownObject(const std::string& m) : std::runtime_error(m) {}
};
struct SoundnessViolation : std::runtime_error {
    explicit SoundnessViolation(const std::string& m) : std::runtime_error(m) {}
};

struct ObjRec {
    glang::ObjKind kind;
    ObjId parent;                      // union-find
    std::string name;
    uint32_t plan_step = glang::kNone; // numeric anchor; kNone for interned objects
    // lines and circles: known incident points (canonical ids) with the fact
    // that put each of them there (kNoFact = definitional)
    std::vector<ObjId> members;
    std::vector<FactId> member_src;
    ObjId center = kNoObj;             // circles
    FactId center_src = kNoFact;
};

struct MergeReport {
    ObjId winner = kNoObj, loser = kNoObj;
    std::vector<FactId> rewritten;
    std::vector<FactId> dropped_trivial;
    std::vector<FactId> shadowed;
    int cascaded_merges = 0;
};

enum class GuardMode { Off, Record, Throw };

class DeductionGraph {
public:
    // ---- objects ----
    ObjId add_object(glang::ObjKind kind, const std::string& name,
                     uint32_t plan_step = glang::kNone);
    ObjId find(ObjId x) const;            // path-compressing representative
    glang::ObjKind kind(ObjId x) const { return objs_.at(x).kind; }
    const std::string& name(ObjId x) const { return objs_.at(find(x)).name; }
    size_t num_objects() const { return objs_.size(); }
    const ObjRec& obj(ObjId x) const { return objs_.at(x); }

    // line through two points, interned on demand (structural hashing)
    ObjId intern_line(ObjId a, ObjId b);
    // an existing line known to contain both points, if any
    ObjId line_through(ObjId a, ObjId b) const;
    ObjId circle_through(ObjId a, ObjId b, ObjId c) const;

    void add_line_member(ObjId line, ObjId p, FactId src);
    void add_circle_member(ObjId circle, ObjId p, FactId src);
    void set_circle_center(ObjId circle, ObjId o, FactId src);

    const std::vector<ObjId>& members_of(ObjId curve) const { return objs_.at(find(curve)).members; }
    ObjId center_of(ObjId circle) const { return objs_.at(find(circle)).center; }
    std::vector<ObjId> points() const;
    std::vector<ObjId> lines() const;    // canonical representatives
    std::vector<ObjId> circles() const;

    // ---- facts ----
    // returns kNoFact when the fact was already known (or trivial)
    FactId assert_fact(Pred p, Args args, Justification j);
    bool has_fact(Pred p, Args args) const;
    FactId find_fact(Pred p, Args args) const;
    const FactRec& fact(FactId f) const { return facts_.at(f); }
    size_t num_facts() const { return facts_.size(); }
    size_t num_live_facts() const { return live_facts_; }

    // wildcard query (kNoObj = wildcard), deterministic insertion order
    std::vector<FactId> query(Pred p, const Args& pattern) const;
    // all live facts of a predicate, insertion order
    const std::vector<FactId>& facts_of(Pred p) const { return by_pred_[int(p)]; }
    const std::vector<FactId>& facts_touching(ObjId x) const;

    MergeReport merge_objects(ObjId a, ObjId b, Justification why);

    uint32_t stamp() const { return stamp_; }

    // ---- numeric gate ----
    void set_guard(const numeric::Diagram* d, const numeric::NumericConfig* cfg, GuardMode m);
    // two point handles that the diagram cannot tell apart (identical-point
    // candidates); without a diagram, handle identity decides
    bool coincident(ObjId a, ObjId b) const;
    const numeric::Diagram* guard_diagram() const { return guard_; }
    const numeric::NumericConfig* guard_config() const { return guard_cfg_; }
    double fact_residual(Pred p, const Args& args) const;   // needs a guard diagram
    const std::vector<std::string>& violations() const { return violations_; }

    // coordinates of any object on the guard diagram (interned lines/circles
    // are resolved through their member points)
    numeric::ObjCoord coords_of(ObjId x) const;

    std::string dump_facts() const;
    std::string describe_fact(FactId f) const;

private:
    struct KeyHash {
        size_t operator()(const std::pair<int, Args>& k) const {
            size_t h = std::hash<int>()(k.first) * 1000003 + k.second.n;
            for (int i = 0; i < k.second.n; ++i) h = h * 1000003 + k.second.a[i];
            return h;
        }
    };

    Args canon(Pred p, Args in) const;   // find() + symmetry canonicalization
    void check_args(Pred p, const Args& args) const;
    void index_fact(FactId f);
    void fact_membership_effects(FactId f);
    void pair_entry(ObjId line, ObjId a, ObjId b);
    void triple_entry(ObjId circle, ObjId a, ObjId b, ObjId c);
    void materialize_coll(ObjId line, ObjId p);
    void materialize_cyclic(ObjId circle, ObjId p);
    void process_merge_queue(MergeReport& rep);
    void do_merge(ObjId a, ObjId b, Justification why, MergeReport& rep);
    void rewrite_fact(FactId f, MergeReport& rep);

    std::vector<ObjRec> objs_;
    std::vector<FactRec> facts_;
    std::unordered_map<std::pair<int, Args>, FactId, KeyHash> fact_index_;
    std::vector<std::vector<FactId>> by_pred_ =
        std::vector<std::vector<FactId>>(kNumPreds);
    std::unordered_map<ObjId, std::vector<FactId>> obj_facts_;
    std::map<std::pair<ObjId, ObjId>, ObjId> pair_line_;
    std::map<std::array<ObjId, 3>, ObjId> triple_circle_;
    std::vector<std::pair<std::pair<ObjId, ObjId>, Justification>> merge_queue_;
    uint32_t stamp_ = 0;
    size_t live_facts_ = 0;
    bool in_merge_ = false;

    const numeric::Diagram* guard_ = nullptr;
    const numeric::NumericConfig* guard_cfg_ = nullptr;
    GuardMode guard_mode_ = GuardMode::Off;
    std::vector<std::string> violations_;
};

// seed a graph from an elaborated plan: objects + construction premises.
// The guard is attached before premises so coincidence-aware structural
// merging sees the diagram. aux_from: facts originating at statement index
// >= aux_from get AuxDef kind
DeductionGraph build_graph(const glang::ConstructionPlan& plan,
                           const numeric::Diagram* d = nullptr,
                           const numeric::NumericConfig* cfg = nullptr,
                           GuardMode mode = GuardMode::Off, size_t aux_from = SIZE_MAX);

// goal facts of the plan in graph terms
std::vector<std::pair<Pred, Args>> goal_facts(const DeductionGraph& g,
                                              const glang::ConstructionPlan& plan);
std::pair<Pred, Args> plan_fact_to_graph(DeductionGraph& g, const glang::PlanFact& pf);

} // namespace hageo::graph
