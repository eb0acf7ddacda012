// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "dereverb/common/error.h"
#include "dereverb/dsp/audio.h"

namespace dereverb::dsp {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t ReadU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void PutU16(std::string* out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

}  // namespace

AudioClip ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Fail(ErrorCode::kCorruptHeader, name + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const unsigned char* data = nullptr;
  size_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    uint32_t chunk_size = ReadU32(chunk + 4);
    size_t body = pos + 8;
    size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16 || available < 16) {
        Fail(ErrorCode::kCorruptHeader, name + ": short fmt chunk");
      }
      const unsigned char* f = bytes.data() + body;
      format = ReadU16(f);
      channels = ReadU16(f + 2);
      rate = ReadU32(f + 4);
      bits = ReadU16(f + 14);
      if (format == kFormatExtensible) {
        if (chunk_size < 40 || available < 40) {
          Fail(ErrorCode::kCorruptHeader, name + ": short extensible fmt");
        }
        // The sub-format GUID starts with the plain format tag.
        format = ReadU16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      // Streamed writers sometimes leave the size field unset.
      data_size = std::min<size_t>(chunk_size, available);
    }
    pos = body + chunk_size + (chunk_size & 1);
  }

  if (!have_fmt) Fail(ErrorCode::kCorruptHeader, name + ": missing fmt chunk");
  if (data == nullptr) {
    Fail(ErrorCode::kCorruptHeader, name + ": missing data chunk");
  }
  if (channels == 0 || rate == 0) {
    Fail(ErrorCode::kCorruptHeader, name + ": zero channels or sample rate");
  }
  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    Fail(ErrorCode::kUnsupportedFormat,
         name + ": format " + std::to_string(format) + " with " +
             std::to_string(bits) + " bits (need PCM16 or float32)");
  }

  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t frames = data_size / frame_bytes;
  if (frames == 0) Fail(ErrorCode::kEmptyAudio, name + ": no samples");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.samples.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        acc += static_cast<int16_t>(ReadU16(p)) / 32768.0;
      } else {
        uint32_t word = ReadU32(p);
        float v;
        std::memcpy(&v, &word, sizeof(v));
        acc += v;
      }
    }
    clip.samples[i] = channels == 1 ? acc : acc / channels;
  }
  return clip;
}

void WriteWav(const std::filesystem::path& path, const AudioClip& clip,
              WavFormat format) {
  const bool pcm16 = format == WavFormat::kPcm16;
  const uint16_t bits = pcm16 ? 16 : 32;
  const uint32_t data_bytes =
      static_cast<uint32_t>(clip.samples.size() * (bits / 8));

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, pcm16 ? kFormatPcm : kFormatFloat);
  PutU16(&out, 1);
  PutU32(&out, static_cast<uint32_t>(clip.sample_rate));
  PutU32(&out, static_cast<uint32_t>(clip.sample_rate) * (bits / 8));
  PutU16(&out, bits / 8);
  PutU16(&out, bits);
  out += "data";
  PutU32(&out, data_bytes);
  for (double x : clip.samples) {
    if (pcm16) {
      double scaled = std::round(std::clamp(x, -1.0, 1.0) * 32768.0);
      auto code = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
      PutU16(&out, static_cast<uint16_t>(code));
    } else {
      float v = static_cast<float>(x);
      uint32_t word;
      std::memcpy(&word, &v, sizeof(word));
      PutU32(&out, word);
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) Fail(ErrorCode::kIoFailure, "cannot create " + path.string());
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) Fail(ErrorCode::kIoFailure, "write failed: " + path.string());
}

}  // namespace dereverb::dsp
