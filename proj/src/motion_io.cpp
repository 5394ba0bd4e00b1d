#include "coach/motion_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coach/error.hpp"

namespace coach {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& msg) {
  throw Error(ErrorKind::Parse,
              source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& tok, const std::string& source,
                    std::size_t line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    parse_fail(source, line, "expected a number, got '" + tok + "'");
  }
  if (pos != tok.size()) {
    parse_fail(source, line, "trailing characters in number '" + tok + "'");
  }
  if (!std::isfinite(v)) {
    parse_fail(source, line, "non-finite value '" + tok + "'");
  }
  return v;
}

} // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string write_motion(const MotionSequence& seq) {
  std::string out;
  out.reserve(seq.frames.size() * 1024 + 512);
  out += "MOTION/1\n";
  out += "fps " + format_value(seq.fps) + "\n";
  out += "axes intrinsic_xyz\n";
  out += "joints";
  for (const auto& j : kJoints) {
    out += ' ';
    out += j.name;
  }
  out += '\n';
  if (seq.subject_height) {
    out += "height " + format_value(*seq.subject_height) + "\n";
  }
  out += "positions ";
  out += seq.has_positions() ? '1' : '0';
  out += '\n';
  out += "frames " + std::to_string(seq.frames.size()) + "\n";
  for (std::size_t t = 0; t < seq.frames.size(); ++t) {
    bool first = true;
    for (const auto& joint : seq.frames[t]) {
      for (double v : joint) {
        if (!first) out += ' ';
        out += format_value(v);
        first = false;
      }
    }
    if (seq.has_positions()) {
      for (const auto& joint : (*seq.positions)[t]) {
        for (double v : joint) {
          out += ' ';
          out += format_value(v);
        }
      }
    }
    out += '\n';
  }
  return out;
}

void write_motion_file(const MotionSequence& seq, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::InvalidInput, "cannot open for writing: " + path);
  }
  f << write_motion(seq);
}

MotionSequence read_motion(const std::string& text,
                           const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    return true;
  };

  if (!next_line() || line != "MOTION/1") {
    parse_fail(source, lineno == 0 ? 1 : lineno,
               "expected header 'MOTION/1'");
  }

  MotionSequence seq;
  bool with_positions = false;
  std::size_t frame_count = 0;
  bool saw_fps = false, saw_axes = false, saw_joints = false,
       saw_positions = false, saw_frames = false;

  while (next_line()) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "fps") {
      std::string tok;
      ls >> tok;
      seq.fps = parse_double(tok, source, lineno);
      if (!(seq.fps > 0.0)) parse_fail(source, lineno, "fps must be positive");
      saw_fps = true;
    } else if (key == "axes") {
      std::string tag;
      ls >> tag;
      if (tag != "intrinsic_xyz") {
        parse_fail(source, lineno, "unsupported axis order '" + tag + "'");
      }
      saw_axes = true;
    } else if (key == "joints") {
      for (std::size_t j = 0; j < kJointCount; ++j) {
        std::string name;
        if (!(ls >> name)) {
          parse_fail(source, lineno, "expected 24 joint names");
        }
        if (name != kJoints[j].name) {
          parse_fail(source, lineno,
                     "joint " + std::to_string(j) + " must be '" +
                         kJoints[j].name + "', got '" + name + "'");
        }
      }
      std::string extra;
      if (ls >> extra) parse_fail(source, lineno, "more than 24 joint names");
      saw_joints = true;
    } else if (key == "height") {
      std::string tok;
      ls >> tok;
      const double h = parse_double(tok, source, lineno);
      if (!(h > 0.0)) parse_fail(source, lineno, "height must be positive");
      seq.subject_height = h;
    } else if (key == "positions") {
      std::string tok;
      ls >> tok;
      if (tok == "0") {
        with_positions = false;
      } else if (tok == "1") {
        with_positions = true;
      } else {
        parse_fail(source, lineno, "positions flag must be 0 or 1");
      }
      saw_positions = true;
    } else if (key == "frames") {
      std::string tok;
      ls >> tok;
      try {
        frame_count = std::stoul(tok);
      } catch (const std::exception&) {
        parse_fail(source, lineno, "invalid frame count '" + tok + "'");
      }
      saw_frames = true;
      break; // data records follow immediately
    } else {
      parse_fail(source, lineno, "unknown header field '" + key + "'");
    }
  }

  if (!saw_fps || !saw_axes || !saw_joints || !saw_positions || !saw_frames) {
    parse_fail(source, lineno, "incomplete header");
  }
  if (frame_count == 0) {
    parse_fail(source, lineno, "frame count must be at least 1");
  }

  const std::size_t expect =
      kFeatureCount + (with_positions ? kFeatureCount : 0);
  seq.frames.resize(frame_count);
  if (with_positions) {
    seq.positions.emplace();
    seq.positions->resize(frame_count);
  }

  for (std::size_t t = 0; t < frame_count; ++t) {
    if (!next_line()) {
      parse_fail(source, lineno + 1,
                 "expected " + std::to_string(frame_count) +
                     " frame records, got " + std::to_string(t));
    }
    std::istringstream ls(line);
    std::string tok;
    std::size_t count = 0;
    while (ls >> tok) {
      const double v = parse_double(tok, source, lineno);
      if (count < kFeatureCount) {
        if (!(v > -180.0 && v <= 180.0)) {
          parse_fail(source, lineno,
                     "rotation value " + tok + " outside (-180, 180]");
        }
        seq.frames[t][count / 3][count % 3] = v;
      } else if (with_positions && count < 2 * kFeatureCount) {
        const std::size_t k = count - kFeatureCount;
        (*seq.positions)[t][k / 3][k % 3] = v;
      } else {
        parse_fail(source, lineno, "too many values in frame record");
      }
      ++count;
    }
    if (count != expect) {
      parse_fail(source, lineno,
                 "expected " + std::to_string(expect) + " values, got " +
                     std::to_string(count));
    }
  }

  if (next_line() && !line.empty()) {
    parse_fail(source, lineno, "unexpected content after frame records");
  }
  return seq;
}

MotionSequence read_motion_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::Parse, path + ":1: cannot open file");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_motion(ss.str(), path);
}

} // namespace coach
