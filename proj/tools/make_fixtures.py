#!/usr/bin/env python3
# Copyright (C) 2026 The crackaudit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Regenerates tests/fixtures. Needs `pip install pyaxml` for the binary
# manifests; zip files come from the standard library.

import os
import zipfile

import pyaxml

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'tests', 'fixtures')

# app: (official indices, cracked indices), 1-based catalog positions
ROWS = {
    1: ([1, 2, 3, 4, 5, 6, 7], [1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14]),
    2: ([1, 2, 3, 4, 7, 8, 9], [1, 2, 3, 4, 7, 9, 10, 11, 12]),
    3: ([9], [1, 2, 3, 4, 6, 8, 15, 16]),
    4: ([1, 2, 3, 7, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    5: ([1, 9], [1, 6, 8, 9]),
    6: ([1, 2, 3, 4, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    7: ([4, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    8: ([1, 4, 9], [1, 4, 6, 8, 9]),
    9: ([7, 9], [6, 7, 8, 9]),
    10: ([1, 7, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    11: ([9], [1, 2, 3, 4, 6, 8, 15, 16]),
    12: ([1, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    13: ([9], [1, 2, 3, 4, 6, 8, 15, 16]),
    14: ([1, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    15: ([9], [1, 2, 3, 4, 6, 8, 15, 16]),
    16: ([1, 2, 3, 4, 7, 9], [1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 12]),
    17: ([9], [1, 2, 3, 4, 6, 8, 15, 16]),
    18: ([1, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
    19: ([9], [1, 2, 3, 9]),
    20: ([1, 6, 8], [1, 2, 3, 4, 6, 8, 15, 16]),
    21: ([1], [1, 2, 3]),
    22: ([2, 3], [1, 2, 3, 4, 6, 8, 15, 16]),
    23: ([1, 2, 3], [1, 2, 3, 4, 6, 8, 15, 16]),
    24: ([1], [1, 2, 3]),
    25: ([1, 9], [1, 2, 3, 4, 6, 8, 15, 16]),
}

NAMES=["INTERNET","ACCESS_COARSE_LOCATION","ACCESS_FINE_LOCATION","CAMERA","BLUETOOTH","READ_EXTERNAL_STORAGE","READ_CONTACTS","WRITE_EXTERNAL_STORAGE","MEDIA_CONTENT_CONTROL","READ_SMS","RECEIVE_SMS","SEND_SMS","WRITE_CONTACTS","CALL_PHONE","RECORD_AUDIO","VIBRATE"]
NS='http://schemas.android.com/apk/res/android'
def manifest(pkg, idx, extra=""):
    lines=[f'<?xml version="1.0" encoding="utf-8"?>',
           f'<manifest xmlns:android="{NS}" package="{pkg}">']
    for j in idx: lines.append(f'    <uses-permission android:name="android.permission.{NAMES[j-1]}" />')
    if extra: lines.append(extra)
    lines.append('    <application android:label="app" />')
    lines.append('</manifest>')
    return "\n".join(lines)+"\n"
root=os.path.join(FIXTURES,'corpus')
for a,(o,c) in ROWS.items():
    for side,idx in (('official',o),('cracked',c)):
        d=f'{root}/{a:02d}/{side}'; os.makedirs(d,exist_ok=True)
        open(f'{d}/manifest.xml','w').write(manifest(f'org.corpus.app{a:02d}',idx))
# expected classes per app, compared against computed ones by --reference
ref={1:[1,3,4,6,7,10,11,12,13,14,15,16,17,18,22,23,25],2:[2,19,20],3:[5,8,9],4:[21,24]}
with open(f'{root}/reference-classes.txt','w') as f:
    f.write("# app class\n")
    for a in range(1,26):
        cl=[k for k,v in ref.items() if a in v][0]
        f.write(f"{a:02d} l{cl}\n")
# paired binary/textual manifests
ax=os.path.join(FIXTURES,'axml')
pairs={}
for a in (1,2,3,9,16,19,21):
    pairs[f'app{a:02d}_cracked']=manifest(f'org.corpus.app{a:02d}',ROWS[a][1])
    pairs[f'app{a:02d}_official']=manifest(f'org.corpus.app{a:02d}',ROWS[a][0])
pairs['two_permissions']=manifest('com.example.two',[1,4])
pairs['duplicates']=manifest('com.example.dup',[1,1,12,1])
pairs['no_permissions']=manifest('com.example.none',[])
pairs['mixed_elements']=manifest('com.example.mixed',[15],extra='\n'.join([
 f'    <permission android:name="com.example.mixed.permission.C2D" android:protectionLevel="signature" />',
 f'    <uses-feature android:name="android.hardware.camera" />',
 f'    <uses-permission-sdk-23 android:name="android.permission.READ_CONTACTS" />',
 f'    <uses-permission android:name="android.permission.NFC" />',
 f'    <uses-permission android:name="com.android.vending.BILLING" />']))
for name,text in pairs.items():
    open(f'{ax}/{name}.xml','w').write(text)
    d=pyaxml.AXML(); d.from_xml(text.split('\n',1)[1]); open(f'{ax}/{name}.axml','wb').write(d.pack())
# APKs
ap=os.path.join(FIXTURES,'apk')
one=pyaxml.AXML(); one.from_xml(manifest('com.example.minimal',[1]).split('\n',1)[1]); one=one.pack()
def apk(path, entries, method):
    with zipfile.ZipFile(path,'w',method) as z:
        for n,data in entries:
            info=zipfile.ZipInfo(n, date_time=(2026,1,1,0,0,0))
            info.compress_type=method
            z.writestr(info,data)
apk(f'{ap}/minimal.apk',[('AndroidManifest.xml',one),('classes.dex',b'dex\n035\0'+bytes(64)),('res/values/strings.xml',b'<resources/>')],zipfile.ZIP_DEFLATED)
apk(f'{ap}/stored.apk',[('META-INF/MANIFEST.MF',b'Manifest-Version: 1.0\r\n'),('AndroidManifest.xml',one)],zipfile.ZIP_STORED)
apk(f'{ap}/no_manifest.apk',[('classes.dex',b'dex\n035\0'),('assets/AndroidManifest.xml.bak',b'x')],zipfile.ZIP_DEFLATED)
