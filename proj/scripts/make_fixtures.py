#!/usr/bin/env python3
"""Builds the APK test fixtures and their ground-truth expectations.

Everything is constructed from first principles with the standard library
plus `cryptography`: binary manifests and resource tables are emitted chunk
by chunk, v1 signatures are real PKCS#7 SignedData blobs, and v2/v3 signing
blocks carry genuine RSA signatures over the per-scheme signed data. The
expected values written to expected_signals.json come from this script's own
bookkeeping (package names, labels, DER fingerprints via hashlib), so the
extractor under test is checked against an independent construction, not
against itself.

Outputs land in tests/data/apk; rerunning regenerates everything (keys are
deterministic only in shape, not bytes, so expected_signals.json always
matches the freshly written APKs).
"""

from __future__ import annotations

import base64
import hashlib
import io
import json
import struct
import zipfile
from datetime import datetime, timezone
from pathlib import Path

from cryptography import x509
from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric import padding, rsa
from cryptography.hazmat.primitives.serialization import pkcs7
from cryptography.x509.oid import NameOID

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "data" / "apk"

# ---------------------------------------------------------------------------
# Android binary XML
# ---------------------------------------------------------------------------

RES_XML_TYPE = 0x0003
RES_STRING_POOL_TYPE = 0x0001
RES_XML_RESOURCE_MAP_TYPE = 0x0180
RES_XML_START_ELEMENT_TYPE = 0x0102
RES_XML_END_ELEMENT_TYPE = 0x0103

UTF8_FLAG = 1 << 8
NO_INDEX = 0xFFFFFFFF

TYPE_REFERENCE = 0x01
TYPE_STRING = 0x03

ANDROID_LABEL_ATTR = 0x01010001


def chunk_header(chunk_type: int, header_size: int, total_size: int) -> bytes:
    return struct.pack("<HHI", chunk_type, header_size, total_size)


def string_pool(strings: list[str], utf8: bool) -> bytes:
    offsets = []
    blob = io.BytesIO()
    for s in strings:
        offsets.append(blob.tell())
        if utf8:
            encoded = s.encode("utf-8")
            if len(s) > 0x7F or len(encoded) > 0x7F:
                raise ValueError("fixture strings must stay short")
            blob.write(struct.pack("<BB", len(s), len(encoded)))
            blob.write(encoded)
            blob.write(b"\x00")
        else:
            units = s.encode("utf-16-le")
            blob.write(struct.pack("<H", len(units) // 2))
            blob.write(units)
            blob.write(b"\x00\x00")
    data = blob.getvalue()
    while len(data) % 4:
        data += b"\x00"

    header_size = 28
    strings_start = header_size + 4 * len(strings)
    total = strings_start + len(data)
    out = io.BytesIO()
    out.write(chunk_header(RES_STRING_POOL_TYPE, header_size, total))
    out.write(struct.pack("<IIIII", len(strings), 0, UTF8_FLAG if utf8 else 0, strings_start, 0))
    for offset in offsets:
        out.write(struct.pack("<I", offset))
    out.write(data)
    return out.getvalue()


def xml_attribute(name_idx: int, raw_idx: int, data_type: int, data: int) -> bytes:
    # ns, name, rawValue, Res_value{size, res0, dataType, data}
    return struct.pack("<IIIHBBI", NO_INDEX, name_idx, raw_idx, 8, 0, data_type, data)


def start_element(name_idx: int, attributes: list[bytes]) -> bytes:
    body = struct.pack("<IIHHHHHH", NO_INDEX, name_idx, 20, 20, len(attributes), 0, 0, 0)
    body += b"".join(attributes)
    total = 16 + len(body)
    return chunk_header(RES_XML_START_ELEMENT_TYPE, 16, total) + struct.pack("<II", 1, NO_INDEX) + body


def end_element(name_idx: int) -> bytes:
    return (chunk_header(RES_XML_END_ELEMENT_TYPE, 16, 24) + struct.pack("<II", 1, NO_INDEX) +
            struct.pack("<II", NO_INDEX, name_idx))


def build_manifest(package: str, label: str | int | None, utf8_pool: bool) -> bytes:
    """label: literal string, resource id int, or None for no label attribute."""
    strings = ["label", "package", "manifest", "application", package]
    label_value_idx = None
    if isinstance(label, str):
        label_value_idx = len(strings)
        strings.append(label)

    pool = string_pool(strings, utf8_pool)
    resource_map = chunk_header(RES_XML_RESOURCE_MAP_TYPE, 8, 8 + 4) + struct.pack("<I", ANDROID_LABEL_ATTR)

    package_attr = xml_attribute(1, 4, TYPE_STRING, 4)
    app_attrs = []
    if isinstance(label, str):
        app_attrs.append(xml_attribute(0, label_value_idx, TYPE_STRING, label_value_idx))
    elif isinstance(label, int):
        app_attrs.append(xml_attribute(0, NO_INDEX, TYPE_REFERENCE, label))

    body = pool + resource_map
    body += start_element(2, [package_attr])
    body += start_element(3, app_attrs)
    body += end_element(3)
    body += end_element(2)
    return chunk_header(RES_XML_TYPE, 8, 8 + len(body)) + body


def build_resource_table(label_value: str) -> bytes:
    """One package (0x7f) with type 1 and two entries: 0x7f010000 is a
    reference to 0x7f010001, which is the label string. Exercises the
    resolver's reference following."""
    values = string_pool([label_value], utf8=True)

    def res_entry(data_type: int, data: int) -> bytes:
        # ResTable_entry{size, flags, key} + Res_value{size, res0, type, data}
        return struct.pack("<HHI", 8, 0, 0) + struct.pack("<HBBI", 8, 0, data_type, data)

    entries = [res_entry(TYPE_REFERENCE, 0x7F010001), res_entry(TYPE_STRING, 0)]
    entry_blob = b"".join(entries)
    entry_offsets = struct.pack("<II", 0, len(entries[0]))

    config_size = 28
    type_header_size = 20 + config_size
    entries_start = type_header_size + len(entry_offsets)
    type_chunk = chunk_header(0x0201, type_header_size, entries_start + len(entry_blob))
    type_chunk += struct.pack("<BBHII", 1, 0, 0, len(entries), entries_start)
    type_chunk += struct.pack("<I", config_size) + b"\x00" * (config_size - 4)
    type_chunk += entry_offsets + entry_blob

    # typeSpec for completeness; the reader skips it.
    type_spec = chunk_header(0x0202, 16, 16 + 4 * len(entries))
    type_spec += struct.pack("<BBHI", 1, 0, 0, len(entries)) + struct.pack("<II", 0, 0)

    type_strings = string_pool(["string"], utf8=True)
    key_strings = string_pool(["app_name", "app_name_ref"], utf8=True)

    package_header_size = 288
    package_body = type_strings + key_strings + type_spec + type_chunk
    package = chunk_header(0x0200, package_header_size, package_header_size + len(package_body))
    package += struct.pack("<I", 0x7F)
    package += "fixture".encode("utf-16-le").ljust(256, b"\x00")
    type_strings_off = package_header_size
    key_strings_off = package_header_size + len(type_strings)
    package += struct.pack("<IIII", type_strings_off, 0, key_strings_off, 0)
    package += struct.pack("<I", 0)  # typeIdOffset
    assert len(package) == package_header_size, "package header math"
    package += package_body

    body = values + package
    return chunk_header(0x0002, 12, 12 + len(body)) + struct.pack("<I", 1) + body


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

class Identity:
    def __init__(self, subject: dict[str, str]):
        self.subject = subject
        self.key = rsa.generate_private_key(public_exponent=65537, key_size=2048)
        name_attrs = []
        oid_map = {
            "common_name": NameOID.COMMON_NAME,
            "organization": NameOID.ORGANIZATION_NAME,
            "organizational_unit": NameOID.ORGANIZATIONAL_UNIT_NAME,
            "locality": NameOID.LOCALITY_NAME,
            "state": NameOID.STATE_OR_PROVINCE_NAME,
            "country": NameOID.COUNTRY_NAME,
        }
        for field, value in subject.items():
            name_attrs.append(x509.NameAttribute(oid_map[field], value))
        name = x509.Name(name_attrs)
        self.cert = (
            x509.CertificateBuilder()
            .subject_name(name)
            .issuer_name(name)
            .public_key(self.key.public_key())
            .serial_number(x509.random_serial_number())
            .not_valid_before(datetime(2015, 1, 1, tzinfo=timezone.utc))
            .not_valid_after(datetime(2045, 1, 1, tzinfo=timezone.utc))
            .sign(self.key, hashes.SHA256())
        )
        self.der = self.cert.public_bytes(serialization.Encoding.DER)
        self.fingerprint = hashlib.sha256(self.der).hexdigest()

    def expected_cert(self, schemes: list[str]) -> dict:
        rdn = {field: self.subject[field] for field in
               ("common_name", "organization", "organizational_unit",
                "locality", "state", "country") if self.subject.get(field) is not None}
        return {
            "fingerprint_sha256": self.fingerprint,
            "subject": rdn,
            "issuer": rdn,
            "self_signed": True,
            "schemes": schemes,
        }


# ---------------------------------------------------------------------------
# v1 (JAR) signing
# ---------------------------------------------------------------------------

def manifest_section(name: str, digest: bytes) -> str:
    return (f"Name: {name}\r\n"
            f"SHA-256-Digest: {base64.b64encode(digest).decode()}\r\n\r\n")


def v1_sign(entries: dict[str, bytes], identity: Identity) -> dict[str, bytes]:
    main = "Manifest-Version: 1.0\r\nCreated-By: fixturegen\r\n\r\n"
    manifest_mf = main
    for name, data in entries.items():
        manifest_mf += manifest_section(name, hashlib.sha256(data).digest())
    mf_bytes = manifest_mf.encode()

    sf = ("Signature-Version: 1.0\r\n"
          f"SHA-256-Digest-Manifest: {base64.b64encode(hashlib.sha256(mf_bytes).digest()).decode()}\r\n"
          "Created-By: fixturegen\r\n\r\n")
    pos = len(main)
    for name, data in entries.items():
        section = manifest_section(name, hashlib.sha256(data).digest())
        sf += manifest_section(name, hashlib.sha256(section.encode()).digest())
        pos += len(section)
    sf_bytes = sf.encode()

    signature = (
        pkcs7.PKCS7SignatureBuilder()
        .set_data(sf_bytes)
        .add_signer(identity.cert, identity.key, hashes.SHA256())
        .sign(serialization.Encoding.DER,
              [pkcs7.PKCS7Options.DetachedSignature, pkcs7.PKCS7Options.Binary])
    )
    return {
        "META-INF/MANIFEST.MF": mf_bytes,
        "META-INF/CERT.SF": sf_bytes,
        "META-INF/CERT.RSA": signature,
    }


# ---------------------------------------------------------------------------
# v2/v3 signing block
# ---------------------------------------------------------------------------

SIG_RSA_PKCS1_SHA256 = 0x0103
V2_BLOCK_ID = 0x7109871A
V3_BLOCK_ID = 0xF05368C0
PROOF_OF_ROTATION_ID = 0x3BA06F8C
BLOCK_MAGIC = b"APK Sig Block 42"
CHUNK = 1 << 20


def lp(data: bytes) -> bytes:
    return struct.pack("<I", len(data)) + data


def content_digest(zip_entries: bytes, central_dir: bytes, eocd: bytes) -> bytes:
    """The v2 scheme's chunked SHA-256 over the three APK sections."""
    chunks = []
    for section in (zip_entries, central_dir, eocd):
        for start in range(0, max(len(section), 1), CHUNK):
            piece = section[start:start + CHUNK]
            if not piece and start > 0:
                break
            h = hashlib.sha256()
            h.update(b"\xa5" + struct.pack("<I", len(piece)))
            h.update(piece)
            chunks.append(h.digest())
    top = hashlib.sha256()
    top.update(b"\x5a" + struct.pack("<I", len(chunks)))
    for digest in chunks:
        top.update(digest)
    return top.digest()


def signed_data_blob(digest: bytes, certs: list[bytes], v3: bool,
                     attributes: bytes = b"") -> bytes:
    digests = lp(struct.pack("<I", SIG_RSA_PKCS1_SHA256) + lp(digest))
    cert_seq = b"".join(lp(der) for der in certs)
    blob = lp(digests) + lp(cert_seq)
    if v3:
        blob += struct.pack("<II", 24, 0x7FFFFFFF)  # minSdk, maxSdk
    blob += lp(attributes)
    return blob


def make_signer(identity: Identity, digest: bytes, v3: bool, attributes: bytes = b"") -> bytes:
    signed_data = signed_data_blob(digest, [identity.der], v3, attributes)
    signature = identity.key.sign(signed_data, padding.PKCS1v15(), hashes.SHA256())
    signatures = lp(struct.pack("<I", SIG_RSA_PKCS1_SHA256) + lp(signature))
    public_key = identity.key.public_key().public_bytes(
        serialization.Encoding.DER, serialization.PublicFormat.SubjectPublicKeyInfo)
    signer = lp(signed_data)
    if v3:
        signer += struct.pack("<II", 24, 0x7FFFFFFF)
    signer += lp(signatures) + lp(public_key)
    return signer


def scheme_value(signers: list[bytes]) -> bytes:
    """Block-pair value: a length-prefixed sequence of length-prefixed signers."""
    return lp(b"".join(lp(s) for s in signers))


def rotation_attribute(lineage: list[Identity]) -> bytes:
    """Proof-of-rotation: version, then one node per certificate in order."""
    nodes = b""
    for i, identity in enumerate(lineage):
        node_signed = lp(identity.der) + struct.pack("<I", SIG_RSA_PKCS1_SHA256)
        signer_key = lineage[max(i - 1, 0)].key  # previous key vouches for the next
        signature = signer_key.sign(node_signed, padding.PKCS1v15(), hashes.SHA256())
        node = lp(node_signed) + struct.pack("<II", 0, SIG_RSA_PKCS1_SHA256) + lp(signature)
        nodes += lp(node)
    value = struct.pack("<I", PROOF_OF_ROTATION_ID) + struct.pack("<I", 1) + nodes
    return lp(value)


def signing_block(pairs: list[tuple[int, bytes]]) -> bytes:
    body = b""
    for block_id, value in pairs:
        body += struct.pack("<Q", len(value) + 4) + struct.pack("<I", block_id) + value
    size = len(body) + 8 + len(BLOCK_MAGIC)
    return struct.pack("<Q", size) + body + struct.pack("<Q", size) + BLOCK_MAGIC


def insert_signing_block(apk: bytes, block_builder) -> bytes:
    eocd_pos = apk.rfind(b"PK\x05\x06")
    cd_offset = struct.unpack("<I", apk[eocd_pos + 16:eocd_pos + 20])[0]
    zip_entries = apk[:cd_offset]
    central_dir = apk[cd_offset:eocd_pos]
    eocd = apk[eocd_pos:]

    # Digest uses the EOCD with its CD offset pointing at the signing block,
    # which is where the central directory "moves" once the block is in.
    block_probe = block_builder(b"\x00" * 32)
    patched_eocd = bytearray(eocd)
    struct.pack_into("<I", patched_eocd, 16, cd_offset)  # block replaces CD position
    digest = content_digest(zip_entries, central_dir, bytes(patched_eocd))
    block = block_builder(digest)
    assert len(block) == len(block_probe), "digest must not change block size"

    final_eocd = bytearray(eocd)
    struct.pack_into("<I", final_eocd, 16, cd_offset + len(block))
    return zip_entries + block + central_dir + bytes(final_eocd)


# ---------------------------------------------------------------------------
# APK assembly
# ---------------------------------------------------------------------------

def build_zip(entries: dict[str, bytes], compressed: set[str] = frozenset()) -> bytes:
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w") as zf:
        for name, data in entries.items():
            info = zipfile.ZipInfo(name, date_time=(2021, 6, 1, 0, 0, 0))
            method = zipfile.ZIP_DEFLATED if name in compressed else zipfile.ZIP_STORED
            zf.writestr(info, data, compress_type=method)
    return buffer.getvalue()


DUMMY_DEX = b"dex\n035\x00" + b"\x00" * 64


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    android_ident = Identity({"common_name": "Android"})
    full_ident = Identity({
        "common_name": "Fixture Two Dev",
        "organization": "Fixture Labs",
        "organizational_unit": "Mobile",
        "locality": "Springfield",
        "state": "Oregon",
        "country": "US",
    })
    three_ident = Identity({"common_name": "Three Corp", "country": "GB"})
    old_ident = Identity({"common_name": "Old Rotation Key"})
    new_ident = Identity({"common_name": "New Rotation Key"})
    signer_a = Identity({"common_name": "Signer A", "organization": "Duo Apps"})
    signer_b = Identity({"common_name": "Signer B", "organization": "Duo Apps"})

    expectations = []

    def emit(name: str, apk: bytes, expected: dict) -> None:
        path = OUT_DIR / name
        path.write_bytes(apk)
        expected["file"] = name
        expected["apk_sha256"] = hashlib.sha256(apk).hexdigest()
        expected["certificates"].sort(key=lambda c: c["fingerprint_sha256"])
        expectations.append(expected)
        print(f"wrote {path} ({len(apk)} bytes)")

    # 1. v1-only, UTF-16 manifest pool, literal label.
    manifest = build_manifest("org.fixture.one", "Fixture One", utf8_pool=False)
    content = {"AndroidManifest.xml": manifest, "classes.dex": DUMMY_DEX}
    apk = build_zip({**v1_sign(content, android_ident), **content})
    emit("v1_only.apk", apk, {
        "package_name": "org.fixture.one",
        "app_name_manifest": "Fixture One",
        "signer_count": 1,
        "warnings": [],
        "certificates": [android_ident.expected_cert(["v1"])],
    })

    # 2. v2-only, UTF-8 pool, label via resource reference chain.
    manifest = build_manifest("org.fixture.two", 0x7F010000, utf8_pool=True)
    content = {
        "AndroidManifest.xml": manifest,
        "resources.arsc": build_resource_table("Fixture Two Label"),
        "classes.dex": DUMMY_DEX,
    }
    base = build_zip(content, compressed={"AndroidManifest.xml", "classes.dex"})
    apk = insert_signing_block(
        base, lambda d: signing_block(
            [(V2_BLOCK_ID, scheme_value([make_signer(full_ident, d, v3=False)]))]))
    emit("v2_only.apk", apk, {
        "package_name": "org.fixture.two",
        "app_name_manifest": "Fixture Two Label",
        "signer_count": 1,
        "warnings": [],
        "certificates": [full_ident.expected_cert(["v2"])],
    })

    # 3. v1+v2 with the same key: one certificate, two schemes.
    manifest = build_manifest("org.fixture.three", "Fixtūre Three ✓", utf8_pool=True)
    content = {"AndroidManifest.xml": manifest, "classes.dex": DUMMY_DEX}
    base = build_zip({**v1_sign(content, three_ident), **content},
                     compressed={"AndroidManifest.xml"})
    apk = insert_signing_block(
        base, lambda d: signing_block(
            [(V2_BLOCK_ID, scheme_value([make_signer(three_ident, d, v3=False)]))]))
    emit("v1_v2.apk", apk, {
        "package_name": "org.fixture.three",
        "app_name_manifest": "Fixtūre Three ✓",
        "signer_count": 1,
        "warnings": [],
        "certificates": [three_ident.expected_cert(["v1", "v2"])],
    })

    # 4. v3 with key rotation: new key signs, lineage carries old and new.
    manifest = build_manifest("org.fixture.rotation", None, utf8_pool=False)
    content = {"AndroidManifest.xml": manifest, "classes.dex": DUMMY_DEX}
    base = build_zip(content)
    rotation = rotation_attribute([old_ident, new_ident])
    apk = insert_signing_block(
        base, lambda d: signing_block(
            [(V3_BLOCK_ID, scheme_value([make_signer(new_ident, d, v3=True,
                                                     attributes=rotation)]))]))
    emit("v3_rotation.apk", apk, {
        "package_name": "org.fixture.rotation",
        "app_name_manifest": None,
        "signer_count": 1,
        "warnings": [],
        "certificates": [old_ident.expected_cert(["v3"]),
                         new_ident.expected_cert(["v3"])],
    })

    # 5. Two independent v2 signers.
    manifest = build_manifest("org.fixture.twosigner", "Signers & Co.", utf8_pool=True)
    content = {"AndroidManifest.xml": manifest, "classes.dex": DUMMY_DEX}
    base = build_zip(content, compressed={"classes.dex"})
    apk = insert_signing_block(
        base, lambda d: signing_block(
            [(V2_BLOCK_ID, scheme_value([make_signer(signer_a, d, v3=False),
                                         make_signer(signer_b, d, v3=False)]))]))
    emit("two_signer.apk", apk, {
        "package_name": "org.fixture.twosigner",
        "app_name_manifest": "Signers & Co.",
        "signer_count": 2,
        "warnings": [],
        "certificates": [signer_a.expected_cert(["v2"]),
                         signer_b.expected_cert(["v2"])],
    })

    # 6. v1 and v2 with different keys: both reported, mismatch flagged.
    mismatch_v1 = Identity({"common_name": "Original Publisher"})
    mismatch_v2 = Identity({"common_name": "Repackager", "organization": "Elsewhere"})
    manifest = build_manifest("org.fixture.mismatch", "Mismatch", utf8_pool=True)
    content = {"AndroidManifest.xml": manifest, "classes.dex": DUMMY_DEX}
    base = build_zip({**v1_sign(content, mismatch_v1), **content})
    apk = insert_signing_block(
        base, lambda d: signing_block(
            [(V2_BLOCK_ID, scheme_value([make_signer(mismatch_v2, d, v3=False)]))]))
    emit("scheme_mismatch.apk", apk, {
        "package_name": "org.fixture.mismatch",
        "app_name_manifest": "Mismatch",
        "signer_count": 1,
        "warnings": ["cross-scheme-mismatch"],
        "certificates": [mismatch_v1.expected_cert(["v1"]),
                         mismatch_v2.expected_cert(["v2"])],
    })

    # 7. Unsigned, label reference without a resource table.
    manifest = build_manifest("org.fixture.unsigned", 0x7F010000, utf8_pool=False)
    apk = build_zip({"AndroidManifest.xml": manifest, "classes.dex": DUMMY_DEX})
    emit("unsigned.apk", apk, {
        "package_name": "org.fixture.unsigned",
        "app_name_manifest": None,
        "signer_count": 0,
        "warnings": ["unresolved-resource", "unsigned"],
        "certificates": [],
    })

    expected_path = OUT_DIR / "expected_signals.json"
    expected_path.write_text(json.dumps(expectations, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {expected_path}")

    write_corpus({e["file"].removesuffix(".apk"): e["apk_sha256"] for e in expectations})


def write_corpus(sha: dict) -> None:
    """Bundled example corpus: two crawls over two markets referencing the
    fixture APKs, with enough signal overlap to exercise every pipeline stage
    (shared developers, a renamed developer, cross-market shared packages,
    an appearing website, a dropped APK, and a mixed-script app name)."""

    def record(market, package, crawl, fetched_at, apk=None, **signals):
        row = {"market": market, "package_name": package,
               "crawl_id": crawl, "fetched_at": fetched_at}
        if apk is not None:
            row["apk_sha256"] = sha[apk]
        row.update(signals)
        return json.dumps(row, ensure_ascii=False)

    lines = [
        # crawl 1, google-play
        record("google-play", "org.fixture.one", 1, "2021-06-01T08:00:00Z", apk="v1_only",
               app_name="Fixture One", developer_name="Fixture Labs",
               developer_email="dev@fixturelabs.example",
               developer_website="https://fixturelabs.example"),
        record("google-play", "org.fixture.two", 1, "2021-06-01T09:00:00Z", apk="v2_only",
               app_name="Fixture Two Label", developer_name="Fixture Labs",
               developer_email="dev@fixturelabs.example",
               privacy_policy_url="https://fixturelabs.example/privacy"),
        record("google-play", "org.fixture.three", 1, "2021-06-02T10:00:00Z", apk="v1_v2",
               app_name="Fixtūre Three ✓", developer_name="Three Corp",
               developer_website="https://three.example"),
        record("google-play", "org.fixture.rotation", 1, "2021-06-03T11:00:00Z",
               apk="v3_rotation", app_name="Rotation Demo", developer_name="Rotation Ltd"),
        record("google-play", "org.fixture.twosigner", 1, "2021-06-04T12:00:00Z",
               apk="two_signer", app_name="Duo", developer_name="Duo Apps",
               developer_email="duo@duo.example"),
        # crawl 1, apkmonk
        record("apkmonk", "org.fixture.one", 1, "2021-06-05T08:00:00Z", apk="v1_only",
               app_name="Fixture One", developer_name="fixture labs"),
        record("apkmonk", "org.fixture.mismatch", 1, "2021-06-05T09:00:00Z",
               apk="scheme_mismatch", app_name="Зеркало", developer_name="Elsewhere Org"),
        record("apkmonk", "org.fixture.unsigned", 1, "2021-06-05T10:00:00Z", apk="unsigned",
               app_name="Unsigned Demo", developer_name="Nobody"),
        # crawl 2
        record("google-play", "org.fixture.one", 2, "2021-11-01T08:00:00Z", apk="v1_only",
               app_name="Fixture One", developer_name="Fixture Labs Limited",
               developer_email="dev@fixturelabs.example",
               developer_website="https://fixturelabs.example"),
        record("google-play", "org.fixture.two", 2, "2021-11-01T09:00:00Z", apk="v2_only",
               app_name="Fixture Two Label", developer_name="Fixture Labs",
               developer_email="dev@fixturelabs.example",
               developer_website="https://fixturelabs.example",
               privacy_policy_url="https://fixturelabs.example/privacy"),
        record("google-play", "org.fixture.rotation", 2, "2021-11-02T11:00:00Z",
               app_name="Rotation Demo", developer_name="Rotation Ltd"),
        record("google-play", "org.fixture.mismatch", 2, "2021-11-03T12:00:00Z",
               apk="scheme_mismatch", app_name="Mismatch", developer_name="Elsewhere Org"),
        record("apkmonk", "org.fixture.one", 2, "2021-11-04T08:00:00Z", apk="v1_only",
               app_name="Fixture One", developer_name="fixture labs"),
    ]
    corpus_dir = OUT_DIR.parent / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    corpus_path = corpus_dir / "entries.jsonl"
    corpus_path.write_text("\n".join(lines) + "\n")
    print(f"wrote {corpus_path} ({len(lines)} records)")


if __name__ == "__main__":
    main()
