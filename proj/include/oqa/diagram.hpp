#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oqa {

enum class SliceKind { CupCW, CupCCW, CapCW, CapCCW, CrossPos, CrossNeg };

struct Slice {
  SliceKind kind;
  int pos;
  friend bool operator==(const Slice&, const Slice&) = default;
};

enum class Boundary { Closed, Open };

struct MorseDiagram {
  std::vector<Slice> slices;
  Boundary boundary = Boundary::Closed;
  friend bool operator==(const MorseDiagram&, const MorseDiagram&) = default;
};

class DiagramError : public std::runtime_error {
 public:
  DiagramError(const std::string& msg, int index = -1)
      : std::runtime_error(msg), index_(index) {}
  int index() const { return index_; }  // slice index or 1-based line, -1 if none

 private:
  int index_;
};

const char* slice_token(SliceKind k);
bool is_cup(SliceKind k);
bool is_cap(SliceKind k);
bool is_crossing(SliceKind k);
int slice_inputs(SliceKind k);
int slice_outputs(SliceKind k);

// Grammar: optional header "boundary: closed|open", then slice tokens
// separated by newlines or '/'. '#' starts a comment.
MorseDiagram parse_diagram(const std::string& text);
std::string serialize(const MorseDiagram& d);
// Slash-separated slices only, e.g. "cup_ccw 0 / cap_ccw 0".
MorseDiagram parse_word(const std::string& word, Boundary b);
std::string word(const MorseDiagram& d);

// Strand directions per level (true = up). Level k lies below slice k; there
// are slices.size() + 1 levels. Throws DiagramError on the first bad slice.
std::vector<std::vector<bool>> levels(const MorseDiagram& d);
void validate(const MorseDiagram& d);

enum class Extremum { UMinus, UPlus, DMinus, DPlus };
Extremum extremum_type(SliceKind k);  // cups and caps only
bool clockwise(Extremum e);

struct Segment {
  int level, pos;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

struct Label {
  int crossing;  // slice index
  int side;      // 0: first tensorand, 1: second
  int u_d, u_u;
  int extrema_before = 0;  // extrema met on the component before this label
};

struct ComponentRecord {
  bool closed = true;
  Segment basepoint{0, 0};
  std::vector<Label> labels;
  std::vector<Extremum> extrema;  // in traversal order
  int whitney = 0;
  std::vector<Segment> up_segments;  // admissible basepoints, sorted
};

struct TraversalRecord {
  std::vector<ComponentRecord> components;  // closed ones by basepoint, open one last
};

// basepoints overrides the default basepoint of closed component i (indexed as
// in the default traversal) with any of its upward segments.
TraversalRecord traverse(const MorseDiagram& d, const std::map<int, Segment>& basepoints = {});

struct DiagramStats {
  int writhe = 0;
  std::vector<int> whitney;
  int total_whitney() const;
};
DiagramStats stats(const MorseDiagram& d);

MorseDiagram compose_tangles(const MorseDiagram& lower, const MorseDiagram& upper);
// Reverses every strand; the result is rotated by pi so that crossings stay upward.
MorseDiagram reverse_orientation(const MorseDiagram& d);

enum class Move {
  Commute,
  M1a,
  M1b,
  M2,
  M2rev,
  M2antiA,
  M2antiArev,
  M2antiB,
  M2antiBrev,
  M3,
  M3rev,
  M4a,
  M4b,
  M4rev_a,
  M4rev_b,
  TwistL,
  TwistR,
  TwistLrev,
  TwistRrev,
};
const std::vector<Move>& all_moves();
const char* move_name(Move m);
std::optional<Move> move_from_name(const std::string& s);

// Rewrites the window starting at slice index `at` (strand position `pos`).
// A matching side is replaced by the other side; when one side is empty and
// nothing matches, the nonempty side is inserted before slice `at`.
MorseDiagram apply_move(const MorseDiagram& d, Move m, int at, int pos);

struct MoveSite {
  Move move;
  int at, pos;
  bool inserts;
};
// Every site where apply_move succeeds. Insertions of patterns that are a
// single side of an identity are included only when include_insertions.
std::vector<MoveSite> move_sites(const MorseDiagram& d, bool include_insertions);

// Catalogue: curl, curl_op, trefoil_tangle, trefoil_knot, hopf, hopf_mirror,
// figure8_knot, unknot_cw, unknot_ccw, identity, and the families c_r_plus,
// c_r_minus, c_l_plus, c_l_minus taking m.
MorseDiagram builtin(const std::string& name, int m = 0);
// "name" or "name(m)" / "name:m".
MorseDiagram builtin_spec(const std::string& spec);
std::vector<std::string> builtin_names();

}  // namespace oqa
