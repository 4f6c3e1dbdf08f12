int fdisk_delete_all_partitions(long param_1) {
 int iVar1;
 long lVar2;
 long lVar3;
 long lVar4;
 long lVar5;
 
 if (param_1 == 0) {
  return 0xffffffea;
 }
 if (*(long *)(param_1 + 0x180) == 0) {
  return 0xffffffea;
 }
 lVar2 = *(long *)(*(long *)(param_1 + 0x180) + 0x30);
 if (lVar2!= 0) {
  lVar3 = 0;
  do {
   iVar1 = fdisk_is_partition_used(param_1, lVar3);
   if ((iVar1!= 0) && (lVar5 = fdisk_delete_partition(param_1, lVar3),(int)lVar5!= 0)) {
    return lVar5;
   }
   lVar3 = lVar3 + 1;
  } while (lVar3 < lVar2);
 }
 return 0;
}
