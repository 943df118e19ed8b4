#pragma once

// Painting fixtures built from the published per-painting values, and
// marking sequences that reproduce the discussed configurations.

#include <string>
#include <vector>

#include "splitlab/record.hpp"
#include "splitlab/session.hpp"

namespace splitlab::testing {

inline SessionConfig fixture_config(const std::string& id, int year) {
  SessionConfig c;
  c.canvas = Canvas(500, 400);
  c.grid = 10;
  c.hidden_length = 20;
  c.catalogue_id = id;
  c.year = year;
  c.image_ref = id + ".jpg";
  return c;
}

/// Twelve regular Tees, three strange coincidences and one hidden stop.
///   H0 y=200 full; crosses at x=100 (V1 below, V2 above) and x=300 (V3,V4);
///   V5 x=200 above H0; H6/H7 y=100 cross V5; H8 y=300 left of V1;
///   H9 y=350 between V1 and V3; a hidden vertical at x=450 stops H10.
inline std::vector<SessionEvent> twelve_tee_marking() {
  using E = SessionEvent;
  return {
      E::place_h(250, 200),                  // H0   0 Tees
      E::place_v(100, 300),                  // V1   1
      E::place_v(100, 100),                  // V2   1, cross with V1
      E::place_v(300, 300),                  // V3   1
      E::place_v(300, 100),                  // V4   1, cross with V3
      E::place_v(200, 50),                   // V5   1
      E::place_h(150, 100),                  // H6   2
      E::place_h(250, 100),                  // H7   2, cross with H6 on V5
      E::place_h(50, 300),                   // H8   1
      E::place_h(200, 350),                  // H9   2
      E::arm_hidden(), E::place_v(450, 380), // hidden vertical [370,390]
      E::place_h(480, 380),                  // H10  Tee on the hidden line
  };
}

/// One full horizontal crossed by two full-height verticals.
inline std::vector<SessionEvent> three_crossing_lines() {
  using E = SessionEvent;
  return {E::place_h(250, 200), E::place_v(150, 300), E::place_v(150, 100),
          E::place_v(350, 300), E::place_v(350, 100)};
}

/// Pure splitting with three hidden stops near the edges (hh=1, hv=2).
inline std::vector<SessionEvent> three_hidden_marking() {
  using E = SessionEvent;
  return {E::arm_hidden(), E::place_v(480, 200),  // hidden vertical
          E::place_h(300, 200),                   // stops at the hidden line
          E::place_v(200, 300),
          E::arm_hidden(), E::place_h(100, 30),   // hidden horizontal
          E::place_v(100, 100),
          E::arm_hidden(), E::place_v(20, 300),   // hidden vertical
          E::place_h(100, 300)};
}

inline PaintingRecord record_from_events(const std::string& id, int year,
                                         const std::vector<SessionEvent>& ev) {
  return make_record(Session::replay(fixture_config(id, year), ev));
}

inline TallySheet tally_of(long rt, long sc, double line_length, long hh,
                           long hv) {
  TallySheet t;
  t.sw = 500;
  t.sh = 400;
  t.thl = line_length / 2;
  t.tvl = line_length / 2;
  t.nh = 4;
  t.nv = 4;
  t.hh = hh;
  t.hv = hv;
  t.rt = rt;
  t.sc = sc;
  return t;
}

/// The six paintings whose values are reported individually.
///   B131 0.50, B198 0.00, B125 1.00 (3 hidden), B288 12/46,
///   B116 0.53 / 4.35 / 3, B108 0.25 / 4.59 / 2.
inline std::vector<PaintingRecord> published_fixtures() {
  return {
      record_from_events("B131", 1921, twelve_tee_marking()),
      record_from_events("B198", 1927, three_crossing_lines()),
      record_from_events("B125", 1921, three_hidden_marking()),
      make_record("B288", 1938, tally_of(46, 17, 4600, 0, 0)),
      make_record("B116", 1921, tally_of(17, 4, 3915, 2, 1)),
      make_record("B108", 1920, tally_of(8, 3, 4131, 1, 1)),
  };
}

}  // namespace splitlab::testing
