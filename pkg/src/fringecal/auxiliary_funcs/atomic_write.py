# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

import os
import pathlib
import tempfile
import contextlib


@contextlib.contextmanager
def atomic_path(path):
    """
    Yield a temporary path in the destination directory; on success it replaces
    `path` in one rename, so readers never see a partially written file.
    """
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix='.' + path.name + '.', suffix='.tmp', dir=str(path.parent))
    os.close(fd)
    tmp = pathlib.Path(tmp)
    try:
        yield tmp
        os.replace(tmp, path)
    except BaseException:
        if tmp.exists():
            tmp.unlink()
        raise


def write_text_atomic(path, text: str, encoding: str = 'utf-8') -> None:
    with atomic_path(path) as tmp:
        tmp.write_text(text, encoding=encoding)
