#include "listlab/dmtf/types.hpp"

#include <string>

namespace listlab::dmtf {

std::string_view line_name(Line line) {
  switch (line) {
    case Line::kIdle: return "idle";
    case Line::kAllocate: return "allocate";
    case Line::kAnnounce: return "announce";
    case Line::kGetHead: return "gethead";
    case Line::kAtFront: return "katfront";
    case Line::kUnannFront1: return "unannFront1";
    case Line::kUnannFront2: return "unannFront2";
    case Line::kLoopItem: return "kfoundlater";
    case Line::kReadAnn1: return "readann1";
    case Line::kUnannOther1: return "unannOther1";
    case Line::kSetGOld: return "setgold";
    case Line::kSetHNew: return "sethnew";
    case Line::kSetGPrime: return "setgprime";
    case Line::kMtfOuter: return "outerloop";
    case Line::kGetHead2: return "gethead2";
    case Line::kGetOld: return "getold";
    case Line::kPrependCheck: return "testold";
    case Line::kTryPrepend: return "tryprepend";
    case Line::kSetNext: return "setnext";
    case Line::kSetPrev: return "setprev";
    case Line::kH1Item: return "h1item";
    case Line::kReadAnnMtf: return "readannMTF";
    case Line::kInformCheck: return "informcheck";
    case Line::kInform: return "inform";
    case Line::kGetPrev: return "getprev";
    case Line::kGetNext: return "getnext";
    case Line::kRemove1: return "remove1";
    case Line::kRemove2: return "remove2";
    case Line::kGoneLine: return "gone";
    case Line::kDoneLine: return "done";
    case Line::kReadAnn2: return "readann2";
    case Line::kUnannPostMtf: return "unannPostMTF";
    case Line::kReadAnn3: return "readann3";
    case Line::kUnannOther2: return "unannOther2";
    case Line::kNext: return "next";
    case Line::kReadAnn4: return "readann4";
    case Line::kUnannEnd: return "unannEnd";
  }
  return "?";
}

std::string_view field_name(Field f) {
  switch (f) {
    case Field::kItem: return "item";
    case Field::kNext: return "next";
    case Field::kPrev: return "prev";
    case Field::kOld: return "old";
    case Field::kNew: return "new";
  }
  return "?";
}

std::string_view cell_kind_name(CellKind k) {
  switch (k) {
    case CellKind::kNode: return "node";
    case CellKind::kHead: return "head";
    case CellKind::kAnnouncement: return "ann";
  }
  return "?";
}

std::string_view access_kind_name(AccessKind k) {
  return k == AccessKind::kRead ? "read" : "cas";
}

std::string ref_name(NodeRef r) {
  switch (r) {
    case kNull: return "NULL";
    case kDone: return "DONE";
    case kGone: return "GONE";
    case kNotPresent: return "NOT_PRESENT";
    case kEnd: return "END";
    default: return std::to_string(r);
  }
}

}  // namespace listlab::dmtf
