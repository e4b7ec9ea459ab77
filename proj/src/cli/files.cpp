#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>

#include "iodc/cli.hpp"
#include "iodc/error.hpp"

namespace iodc::cli {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_fail(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::IoError, what + " '" + path.string() + "': " + std::strerror(errno));
}

}  // namespace

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open");
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) io_fail(path, "cannot read");
  return out;
}

void write_file_atomic(const fs::path& path, ByteView data, bool secret) {
  std::string tmpl = path.string() + ".tmpXXXXXX";
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0) io_fail(path, "cannot create temporary file for");

  auto fail = [&](const char* what) {
    const int saved = errno;
    ::close(fd);
    ::unlink(tmpl.c_str());
    errno = saved;
    io_fail(path, what);
  };

  if (::fchmod(fd, secret ? 0600 : 0644) != 0) fail("cannot set permissions on");
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("cannot write");
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) fail("cannot sync");
  if (::close(fd) != 0) {
    ::unlink(tmpl.c_str());
    io_fail(path, "cannot close");
  }
  if (::rename(tmpl.c_str(), path.c_str()) != 0) {
    const int saved = errno;
    ::unlink(tmpl.c_str());
    errno = saved;
    io_fail(path, "cannot rename into");
  }
}

void check_cli_identity(const std::string& id) {
  auto ok = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '.' || c == '_' || c == '-';
  };
  if (id.empty() || id.size() > 255 || id.front() == '.' ||
      !std::all_of(id.begin(), id.end(), ok))
    throw Error(ErrorCode::Usage, "identity '" + id + "' must match [A-Za-z0-9._-]{1,255}");
}

}  // namespace iodc::cli
