#include "hageo/dd/rule.hpp"

namespace hageo::dd {

// The shipped deduction rule set. eqangle l1 l2 l3 l4 reads
// dir(l1)-dir(l2) = dir(l3)-dir(l4) mod pi. Rules prefixed '~' are disabled
// by default; the *_orig forms are the higher-arity originals that the
// rewritten forms replace, kept for the equivalence tests.
static const std::string kBuiltinRules = R"(
# angle chasing on lines. Transitivity of the angle-pair equality is part of
# the store semantics during closure comparisons; in normal runs the AR angle
# system subsumes it, so it ships disabled.
angle_transfer: eqangle a b c d => eqangle a c b d
~angle_chase_orig: eqangle a b c d , eqangle a e c f => eqangle b e d f
~eqangle_trans: eqangle a b c d , eqangle c d e f => eqangle a b e f

# parallels and perpendiculars
para_trans: para a b , para b c ; notpara a c => para a c
perp_para: perp a b , para b c => perp a c
perp_perp_para: perp a b , perp b c ; notpara a c => para a c
orthocenter: perp A-H B-C , perp B-H C-A ; noncoll A B C => perp C-H A-B
bisector_concur: eqangle A-B A-I A-I A-C , eqangle B-C B-I B-I B-A ; noncoll A B C => eqangle C-A C-I C-I C-B

# circles
cyclic_eqangle: cyclic A B P Q => eqangle P-A P-B Q-A Q-B
eqangle_cyclic: eqangle P-A P-B Q-A Q-B ; distinct P Q ; noncoll A B P ; noncoll A B Q => cyclic A B P Q
cong_cyclic: cong O A O B , cong O B O C , cong O C O D ; noncoll A B C => cyclic A B C D
circum_unique: cong O A O B , cong O B O C , cyclic A B C D ; noncoll A B C => cong O A O D

# isoceles and perpendicular bisectors
isoceles_eqangle: cong X A X B ; noncoll A B X => eqangle A-X A-B A-B B-X
eqangle_isoceles: eqangle A-X A-B A-B B-X ; noncoll A B X => cong X A X B
perp_bisector: cong X A X B , cong Y A Y B => perp X-Y A-B
perp_bisector_conv: midp M A B , perp X-M A-B => cong X A X B

# midpoints
midp_cong: midp M A B => cong M A M B
midp_coll: midp M A B => coll M A B
midp_intro: coll M A B , cong M A M B => midp M A B
midp_unique: midp M A B , midp N A B => same M N
midline_para: midp M A B , midp N A C ; noncoll A B C => para M-N B-C
midline_ratio: midp M A B , midp N A C ; noncoll A B C => eqratio M N B C A M A B
pt_reflection_sim: midp M A C , midp M B D ; noncoll M A B => simtriP M A B M C D

# intercept theorem
thales_sim: para A-B C-D , coll O A C , coll O B D ; noncoll O A B ; distinct A C ; distinct B D => simtriP O A B O C D

# similar triangles from angles (rewritten AA forms and originals)
simtri_aa_p: eqangle A-B D-E A-C D-F , eqangle A-C D-F B-C E-F ; noncoll A B C ; noncoll D E F => simtriP A B C D E F
~simtri_aa_p_orig: eqangle A-B B-C D-E E-F , eqangle A-C B-C D-F E-F ; noncoll A B C ; noncoll D E F => simtriP A B C D E F
simtri_aa_n: eqangle A-B A-C D-F D-E , eqangle A-C B-C E-F D-F ; noncoll A B C ; noncoll D E F => simtriN A B C D E F

# similar triangles from a ratio and the included angle (orientation checked)
sas_sim_p: eqratio A B D E A C D F , eqangle A-B A-C D-E D-F ; noncoll A B C ; noncoll D E F ; sameclock A B C D E F => simtriP A B C D E F
sas_sim_n: eqratio A B D E A C D F , eqangle A-B A-C D-F D-E ; noncoll A B C ; noncoll D E F ; oppclock A B C D E F => simtriN A B C D E F

# congruent triangles
contri_p: simtriP A B C D E F , cong A B D E => contri A B C D E F
contri_n: simtriN A B C D E F , cong A B D E => contri A B C D E F

# uniqueness (identical points)
inter_unique: coll X A B , coll X C D , coll Y A B , coll Y C D ; notpara A-B C-D => same X Y
foot_unique: coll X A B , perp P-X A-B , coll Y A B , perp P-Y A-B ; noncoll P A B => same X Y
)";

const std::string& builtin_rules_text() { return kBuiltinRules; }

} // namespace hageo::dd
